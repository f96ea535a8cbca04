/* C interface to the locality-zeta anticommutation counter. */

#ifndef LOCALITY_ZETA_H
#define LOCALITY_ZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LZ_LETTER_I 0

#define LZ_LETTER_X 1

#define LZ_LETTER_Z 2

#define LZ_LETTER_Y 3

/**
 * Weight cap used when `0` is passed for a cap argument.
 */
#define LZ_DEFAULT_WEIGHT_CAP 20

typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  LZ_STATUS_NULL_POINTER = 1,
  LZ_STATUS_INVALID_ARGUMENT = 2,
  LZ_STATUS_INVALID_LETTER = 3,
  LZ_STATUS_DUPLICATE_INDEX = 4,
  LZ_STATUS_WEIGHT_CAP_EXCEEDED = 5,
  LZ_STATUS_COUNT_OVERFLOW = 6,
  LZ_STATUS_PARSE_ERROR = 7,
  LZ_STATUS_IO_ERROR = 8,
  LZ_STATUS_INTERNAL = 9,
  LZ_STATUS_PANIC = 10,
} LzStatus;

/**
 * Input format for [`lz_strings_read_file`].
 */
typedef enum LzFormat {
  LZ_FORMAT_AUTO = 0,
  LZ_FORMAT_DENSE = 1,
  LZ_FORMAT_SPARSE = 2,
} LzFormat;

/**
 * Opaque list of Pauli strings.
 */
typedef struct LzStringList LzStringList;

/**
 * Opaque pattern-count table.
 */
typedef struct LzTable LzTable;

typedef struct LzCounters {
  uint64_t dict_updates;
  uint64_t dict_lookups;
} LzCounters;

typedef struct LzBatchReport {
  /**
   * Strings processed; certify stops at the first violating string.
   */
  uint64_t m;
  uint64_t total_anti_pairs;
  bool has_witness;
  uint64_t witness_i;
  uint64_t witness_j;
  struct LzCounters counters;
  uint64_t elapsed_ns;
} LzBatchReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *lz_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *lz_version(void);

/**
 * Create an empty table. `weight_cap == 0` selects the default cap.
 */
enum LzStatus lz_table_new(size_t weight_cap, struct LzTable **out);

void lz_table_free(struct LzTable *table);

/**
 * Insert one string given as parallel arrays of qubits and letter codes.
 */
enum LzStatus lz_table_insert(struct LzTable *table,
                              const uint32_t *qubits,
                              const uint8_t *letters,
                              size_t len);

/**
 * Number of inserted strings anticommuting with the given string.
 */
enum LzStatus lz_table_anti_count(const struct LzTable *table,
                                  const uint32_t *qubits,
                                  const uint8_t *letters,
                                  size_t len,
                                  uint64_t *out_count);

/**
 * Number of strings inserted so far; 0 for a null handle.
 */
uint64_t lz_table_inserted(const struct LzTable *table);

enum LzStatus lz_table_counters(const struct LzTable *table, struct LzCounters *out);

/**
 * Create an empty string list.
 */
struct LzStringList *lz_strings_new(void);

void lz_strings_free(struct LzStringList *list);

/**
 * Number of strings; 0 for a null handle.
 */
size_t lz_strings_len(const struct LzStringList *list);

enum LzStatus lz_strings_push(struct LzStringList *list,
                              const uint32_t *qubits,
                              const uint8_t *letters,
                              size_t len);

/**
 * Append one line in dense (`XIZ`) or sparse (`X0 Z2`) notation.
 */
enum LzStatus lz_strings_push_line(struct LzStringList *list,
                                   const char *line,
                                   enum LzFormat format);

/**
 * Read a corpus file into a new list.
 */
enum LzStatus lz_strings_read_file(const char *path,
                                   enum LzFormat format,
                                   struct LzStringList **out);

/**
 * Count all anticommuting unordered pairs. `weight_cap == 0` selects the default.
 */
enum LzStatus lz_count_pairs(const struct LzStringList *list,
                             size_t weight_cap,
                             struct LzBatchReport *out);

/**
 * Certify pairwise commutation; a witness is reported in `out` if one exists.
 */
enum LzStatus lz_certify(const struct LzStringList *list,
                         size_t weight_cap,
                         struct LzBatchReport *out);

/**
 * Per-string anticommutation counts against the preceding strings.
 * `out_counts` must hold `lz_strings_len(list)` values.
 */
enum LzStatus lz_anti_degree_profile(const struct LzStringList *list,
                                     size_t weight_cap,
                                     uint64_t *out_counts);

/**
 * Quadratic pairwise count, for cross-checking.
 */
enum LzStatus lz_baseline_count(const struct LzStringList *list, uint64_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOCALITY_ZETA_H */
