#include "ckdual/ckdual.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ckdual/duality.hpp"
#include "ckdual/error.hpp"
#include "ckdual/report.hpp"
#include "ckdual/sft.hpp"

struct ckd_matrix {
  ckdual::sft::ZeroOneMatrix a;
};

namespace {

thread_local std::string last_error;
thread_local ckd_error_kind last_kind = CKD_ERR_NONE;
thread_local int last_index = -1;

ckd_error_kind map_kind(ckdual::ErrorKind k) {
  using ckdual::ErrorKind;
  switch (k) {
  case ErrorKind::NotSquare: return CKD_ERR_NOT_SQUARE;
  case ErrorKind::NonBinaryEntry: return CKD_ERR_NON_BINARY_ENTRY;
  case ErrorKind::ZeroRow: return CKD_ERR_ZERO_ROW;
  case ErrorKind::ZeroColumn: return CKD_ERR_ZERO_COLUMN;
  case ErrorKind::ParseError: return CKD_ERR_PARSE;
  case ErrorKind::InvalidArgument: return CKD_ERR_INVALID_ARGUMENT;
  case ErrorKind::Overflow: return CKD_ERR_OVERFLOW;
  default: return CKD_ERR_OTHER;
  }
}

ckd_status fail(ckd_error_kind kind, const std::string& msg, int index = -1) {
  last_error = msg;
  last_kind = kind;
  last_index = index;
  return kind == CKD_ERR_OVERFLOW || kind == CKD_ERR_OTHER ? CKD_INTERNAL_ERROR : CKD_INPUT_ERROR;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `body` and translates exceptions into status codes.
template <class F>
ckd_status guarded(F&& body) {
  last_error.clear();
  last_kind = CKD_ERR_NONE;
  last_index = -1;
  try {
    return body();
  } catch (const ckdual::Error& e) {
    return fail(map_kind(e.kind()), std::string(ckdual::to_string(e.kind())) + ": " + e.what(), e.index());
  } catch (const std::bad_alloc&) {
    return fail(CKD_ERR_OTHER, "out of memory");
  } catch (const std::exception& e) {
    return fail(CKD_ERR_OTHER, e.what());
  }
}

template <class Report>
ckd_status emit(const Report& r, bool ok, ckd_format fmt, char** out, int* all_hold) {
  if (!out) return fail(CKD_ERR_INVALID_ARGUMENT, "output pointer is null");
  const std::string s = fmt == CKD_FORMAT_JSON ? ckdual::report::dump(nlohmann::json(r)) : ckdual::report::render_text(r);
  *out = copy_out(s);
  if (all_hold) *all_hold = ok ? 1 : 0;
  return CKD_OK;
}

ckd_status require_matrix(const ckd_matrix* m) {
  if (!m) return fail(CKD_ERR_INVALID_ARGUMENT, "matrix handle is null");
  return CKD_OK;
}

} // namespace

extern "C" {

ckd_status ckd_matrix_load(const char* path, ckd_matrix** out) {
  return guarded([&] {
    if (!path || !out) return fail(CKD_ERR_INVALID_ARGUMENT, "null argument");
    *out = new ckd_matrix{ckdual::sft::load_matrix_file(path)};
    return CKD_OK;
  });
}

ckd_status ckd_matrix_parse(const char* text, ckd_matrix** out) {
  return guarded([&] {
    if (!text || !out) return fail(CKD_ERR_INVALID_ARGUMENT, "null argument");
    *out = new ckd_matrix{ckdual::sft::parse_matrix(text)};
    return CKD_OK;
  });
}

ckd_status ckd_matrix_from_rows(const long long* entries, int n, ckd_matrix** out) {
  return guarded([&] {
    if (!entries || !out || n <= 0) return fail(CKD_ERR_INVALID_ARGUMENT, "need a positive size and entries");
    std::vector<std::vector<long long>> raw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)].assign(entries + i * n, entries + (i + 1) * n);
    *out = new ckd_matrix{ckdual::sft::validate_matrix(raw)};
    return CKD_OK;
  });
}

void ckd_matrix_free(ckd_matrix* m) { delete m; }

int ckd_matrix_size(const ckd_matrix* m) { return m ? m->a.size() : 0; }

int ckd_matrix_entry(const ckd_matrix* m, int i, int j) {
  if (!m || i < 0 || j < 0 || i >= m->a.size() || j >= m->a.size()) return -1;
  return m->a.at(i, j);
}

const char* ckd_last_error(void) { return last_error.c_str(); }
ckd_error_kind ckd_last_error_kind(void) { return last_kind; }
int ckd_last_error_index(void) { return last_index; }

void ckd_string_free(char* s) { std::free(s); }

ckd_status ckd_validate(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    return emit(ckdual::report::make_validate(m->a), true, fmt, out, all_hold);
  });
}

ckd_status ckd_words(const ckd_matrix* m, int length, ckd_format fmt, char** out, int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    return emit(ckdual::report::make_words(m->a, length), true, fmt, out, all_hold);
  });
}

ckd_status ckd_ktheory(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    const auto doc = ckdual::report::make_ktheory(m->a);
    return emit(doc, ckdual::report::duality_holds(doc.duality), fmt, out, all_hold);
  });
}

ckd_status ckd_duality(const ckd_matrix* m, ckd_format fmt, char** out, int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    const auto d = ckdual::ktheory::duality_report(m->a);
    return emit(d, ckdual::report::duality_holds(d), fmt, out, all_hold);
  });
}

ckd_status ckd_fock_verify(const ckd_matrix* m, int m_max, const char* relation, ckd_format fmt, char** out,
                           int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    const std::string rel = relation ? relation : "all";
    if (rel != "i" && rel != "ii" && rel != "iii" && rel != "iv" && rel != "all")
      return fail(CKD_ERR_INVALID_ARGUMENT, "relation must be one of i, ii, iii, iv, all");
    const auto r = ckdual::report::make_fock(m->a, m_max, rel);
    return emit(r, r.holds, fmt, out, all_hold);
  });
}

ckd_status ckd_lemma_verify(const ckd_matrix* m, int m_max, const char* which, ckd_format fmt, char** out,
                            int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    const std::string w = which ? which : "W";
    if (m_max < 2) return fail(CKD_ERR_INVALID_ARGUMENT, "--max-length must be at least 2");
    const auto basis = ckdual::fock::make_basis(m->a, m_max);
    ckdual::duality::LemmaReport r;
    if (w == "W")
      r = ckdual::duality::verify_lemma_W(basis);
    else if (w == "V")
      r = ckdual::duality::verify_lemma_V(basis);
    else if (w == "toeplitz")
      r = ckdual::duality::verify_toeplitz_untwist(basis);
    else
      return fail(CKD_ERR_INVALID_ARGUMENT, "which must be one of W, V, toeplitz");
    return emit(r, r.all_hold(), fmt, out, all_hold);
  });
}

ckd_status ckd_pairing(const ckd_matrix* m, int m_max, ckd_format fmt, char** out, int* all_hold) {
  return guarded([&] {
    if (auto s = require_matrix(m)) return s;
    const auto r = ckdual::report::make_pairing(m->a, m_max);
    const bool ok = r.index_zero && r.index.vacuum_is_eigenvector && r.index.vacuum_eigenvalue == m->a.size();
    return emit(r, ok, fmt, out, all_hold);
  });
}

} // extern "C"
