#ifndef CKDUAL_CKDUAL_H
#define CKDUAL_CKDUAL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CKD_API __declspec(dllexport)
#else
#define CKD_API __attribute__((visibility("default")))
#endif

/* Every call returns a status; on failure ckd_last_error() describes it. */
typedef enum ckd_status {
  CKD_OK = 0,
  CKD_INPUT_ERROR = 2,    /* malformed or invalid input, bad argument */
  CKD_INTERNAL_ERROR = 3  /* overflow or an unexpected failure */
} ckd_status;

typedef enum ckd_error_kind {
  CKD_ERR_NONE = 0,
  CKD_ERR_NOT_SQUARE,
  CKD_ERR_NON_BINARY_ENTRY,
  CKD_ERR_ZERO_ROW,
  CKD_ERR_ZERO_COLUMN,
  CKD_ERR_PARSE,
  CKD_ERR_INVALID_ARGUMENT,
  CKD_ERR_OVERFLOW,
  CKD_ERR_IO,
  CKD_ERR_OTHER
} ckd_error_kind;

typedef enum ckd_format { CKD_FORMAT_TEXT = 0, CKD_FORMAT_JSON = 1 } ckd_format;

/* Validated 0/1 transition matrix. */
typedef struct ckd_matrix ckd_matrix;

CKD_API ckd_status ckd_matrix_load(const char* path, ckd_matrix** out);
CKD_API ckd_status ckd_matrix_parse(const char* text, ckd_matrix** out);
/* Row-major n*n entries. */
CKD_API ckd_status ckd_matrix_from_rows(const long long* entries, int n, ckd_matrix** out);
CKD_API void ckd_matrix_free(ckd_matrix* m);
CKD_API int ckd_matrix_size(const ckd_matrix* m);
CKD_API int ckd_matrix_entry(const ckd_matrix* m, int i, int j);

/* Thread-local description of the last failure on this thread. */
CKD_API const char* ckd_last_error(void);
CKD_API ckd_error_kind ckd_last_error_kind(void);
/* 1-based row/column of a zero row/column error, -1 otherwise. */
CKD_API int ckd_last_error_index(void);

/* Strings returned through `out` are owned by the caller. */
CKD_API void ckd_string_free(char* s);

/*
 * Report producers. On CKD_OK, *out holds the rendered report and *all_hold
 * (if not NULL) is 1 when every check ran clean and 0 when defects were found.
 *
 *   relation: "i", "ii", "iii", "iv" or "all"
 *   which:    "W", "V" or "toeplitz"
 *   m_max:    truncation length, at least 2
 */
CKD_API ckd_status ckd_validate(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold);
CKD_API ckd_status ckd_words(const ckd_matrix* m, int length, ckd_format fmt, char** out, int* all_hold);
CKD_API ckd_status ckd_ktheory(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold);
CKD_API ckd_status ckd_duality(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold);
CKD_API ckd_status ckd_fock_verify(const ckd_matrix* m, int m_max, const char* relation, ckd_format fmt, char** out,
                                   int* all_hold);
CKD_API ckd_status ckd_lemma_verify(const ckd_matrix* m, int m_max, const char* which, ckd_format fmt, char** out,
                                    int* all_hold);
CKD_API ckd_status ckd_pairing(const ckd_matrix* m, int m_max, ckd_format fmt, char** out, int* all_hold);

#ifdef __cplusplus
}
#endif

#endif
