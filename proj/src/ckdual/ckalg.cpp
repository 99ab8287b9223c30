#include "ckdual/ckalg.hpp"

#include <algorithm>
#include <sstream>

#include "ckdual/error.hpp"

namespace ckdual::ckalg {

AlgebraPtr make_algebra(const sft::ZeroOneMatrix& a, AlgebraTag tag) {
  if (tag == AlgebraTag::A) return std::make_shared<const CKAlgebra>(CKAlgebra{tag, a, 's'});
  return std::make_shared<const CKAlgebra>(CKAlgebra{tag, sft::transpose(a), 't'});
}

bool operator<(const CKKey& a, const CKKey& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.mu != b.mu) return a.mu < b.mu;
  return a.nu < b.nu;
}

namespace {

bool can_follow(const sft::ZeroOneMatrix& a, const Word& w, int k) { return w.empty() || a(w.back(), k); }

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word appended(const Word& w, int k) {
  Word out = w;
  out.push_back(k);
  return out;
}

void check_admissible(const CKAlgebra& alg, const Word& w) {
  if (!sft::is_admissible(alg.matrix, w))
    throw Error(ErrorKind::InvalidArgument,
                std::string("word \"") + sft::word_to_string(w, alg.size()) + "\" is not admissible for " + alg.symbol);
}

} // namespace

bool is_zero_term(const sft::ZeroOneMatrix& a, const CKKey& key) {
  if (key.mu.empty() || key.nu.empty()) return false;
  const int i = key.mu.back();
  const int j = key.nu.back();
  for (int k = 0; k < a.size(); ++k)
    if (a(i, k) && a(j, k)) return false;
  return true;
}

KeyCoeffs multiply_terms(const sft::ZeroOneMatrix& a, const CKKey& x, const CKKey& y) {
  KeyCoeffs out;
  auto emit = [&](CKKey key) {
    if (!is_zero_term(a, key)) out.emplace_back(std::move(key), Rational(1));
  };
  const Word& nu = x.nu;
  const Word& alpha = y.mu;
  if (is_prefix(nu, alpha)) {
    const Word rest(alpha.begin() + static_cast<std::ptrdiff_t>(nu.size()), alpha.end());
    if (!rest.empty()) {
      // s_nu^* s_{nu rest} = s_rest
      if (can_follow(a, x.mu, rest.front())) emit(CKKey{concat(x.mu, rest), y.nu});
    } else if (nu.empty()) {
      emit(CKKey{x.mu, y.nu});
    } else {
      // s_nu^* s_nu = sum_k A(nu_last,k) s_k s_k^*
      for (int k = 0; k < a.size(); ++k) {
        if (!a(nu.back(), k) || !can_follow(a, x.mu, k) || !can_follow(a, y.nu, k)) continue;
        emit(CKKey{appended(x.mu, k), appended(y.nu, k)});
      }
    }
  } else if (is_prefix(alpha, nu)) {
    // s_{alpha rest}^* s_alpha = s_rest^*
    const Word rest(nu.begin() + static_cast<std::ptrdiff_t>(alpha.size()), nu.end());
    if (can_follow(a, y.nu, rest.front())) emit(CKKey{x.mu, concat(y.nu, rest)});
  }
  return out;
}

std::vector<CKKey> expand_term(const sft::ZeroOneMatrix& a, const CKKey& key) {
  std::vector<CKKey> out;
  for (int k = 0; k < a.size(); ++k) {
    if (!can_follow(a, key.mu, k) || !can_follow(a, key.nu, k)) continue;
    out.push_back(CKKey{appended(key.mu, k), appended(key.nu, k)});
  }
  return out;
}

namespace {

void expand_into(const sft::ZeroOneMatrix& a, const CKKey& key, std::size_t level, std::vector<CKKey>& out) {
  if (std::min(key.mu.size(), key.nu.size()) >= level) {
    out.push_back(key);
    return;
  }
  for (const auto& child : expand_term(a, key)) expand_into(a, child, level, out);
}

std::vector<CKKey> expand_to_level(const sft::ZeroOneMatrix& a, const CKKey& key, std::size_t level) {
  std::vector<CKKey> out;
  expand_into(a, key, level, out);
  return out;
}

void accumulate(std::map<CKKey, Rational>& terms, const CKKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

void require_same_algebra(const CKElement& x, const CKElement& y) {
  if (!(*x.algebra() == *y.algebra()))
    throw Error(ErrorKind::SignatureMismatch, "elements belong to different Cuntz-Krieger algebras");
}

} // namespace

CKElement CKElement::unit(AlgebraPtr algebra) {
  CKElement e(std::move(algebra));
  e.terms_.emplace(CKKey{}, Rational(1));
  return e;
}

CKElement CKElement::generator(AlgebraPtr algebra, int k) {
  if (k < 0 || k >= algebra->size()) throw Error(ErrorKind::InvalidArgument, "generator index out of range");
  return term(std::move(algebra), Word{k}, Word{});
}

CKElement CKElement::term(AlgebraPtr algebra, Word mu, Word nu, Rational coeff) {
  CKElement e(std::move(algebra));
  e.add_term(CKKey{std::move(mu), std::move(nu)}, coeff);
  return e;
}

void CKElement::add_term(const CKKey& key, const Rational& coeff) {
  check_admissible(*algebra_, key.mu);
  check_admissible(*algebra_, key.nu);
  if (is_zero_term(algebra_->matrix, key)) return;
  accumulate(terms_, key, coeff);
}

std::size_t CKElement::max_word_length() const {
  std::size_t len = 0;
  for (const auto& [key, c] : terms_) len = std::max({len, key.mu.size(), key.nu.size()});
  return len;
}

CKElement& CKElement::operator+=(const CKElement& o) {
  require_same_algebra(*this, o);
  for (const auto& [key, c] : o.terms_) accumulate(terms_, key, c);
  return *this;
}

CKElement& CKElement::operator-=(const CKElement& o) {
  require_same_algebra(*this, o);
  for (const auto& [key, c] : o.terms_) accumulate(terms_, key, -c);
  return *this;
}

CKElement& CKElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

CKElement operator*(const CKElement& x, const CKElement& y) { return ck_multiply(x, y); }

CKElement ck_multiply(const CKElement& x, const CKElement& y) {
  require_same_algebra(x, y);
  const auto& a = x.algebra()->matrix;
  CKElement::Terms acc;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms())
      for (const auto& [key, c] : multiply_terms(a, kx, ky)) accumulate(acc, key, c * cx * cy);
  CKElement out(x.algebra());
  for (const auto& [key, c] : acc) out.add_term(key, c);
  return out;
}

CKElement ck_adjoint(const CKElement& x) {
  CKElement out(x.algebra());
  for (const auto& [key, c] : x.terms()) out.add_term(CKKey{key.nu, key.mu}, c);
  return out;
}

CKElement CKElement::expanded_to(std::size_t level) const {
  CKElement out(algebra_);
  for (const auto& [key, c] : terms_)
    for (const auto& k : expand_to_level(algebra_->matrix, key, level)) accumulate(out.terms_, k, c);
  return out;
}

bool ck_equal(const CKElement& x, const CKElement& y, std::size_t level) {
  require_same_algebra(x, y);
  if (level < std::max(x.max_word_length(), y.max_word_length()))
    throw Error(ErrorKind::LevelTooSmall, "comparison level " + std::to_string(level) + " is below the longest word");
  return (x - y).expanded_to(level).is_zero();
}

bool ck_equal(const CKElement& x, const CKElement& y) {
  return ck_equal(x, y, std::max(x.max_word_length(), y.max_word_length()));
}

std::string render_key(const CKKey& key, char symbol, int n) {
  if (key.mu.empty() && key.nu.empty()) return "1";
  std::string out;
  if (!key.mu.empty()) out += std::string(1, symbol) + "[" + sft::word_to_string(key.mu, n) + "]";
  if (!key.nu.empty()) out += std::string(1, symbol) + "[" + sft::word_to_string(key.nu, n) + "]*";
  return out;
}

namespace {

// Appends " + 2 body" style text; `first` controls the leading sign format.
void append_signed(std::string& out, const Rational& c, const std::string& body, bool first) {
  const bool negative = c < 0;
  const Rational mag = abs(c);
  if (first)
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (mag != 1) out += mag.get_str() + " ";
  out += body;
}

} // namespace

std::string CKElement::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    append_signed(out, c, render_key(key, algebra_->symbol, algebra_->size()), first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool same_signature(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index() != b[i].index()) return false;
    if (const auto* pa = std::get_if<AlgebraPtr>(&a[i])) {
      if (!(**pa == *std::get<AlgebraPtr>(b[i]))) return false;
    }
  }
  return true;
}

bool operator<(const FactorTerm& a, const FactorTerm& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.key == b.key) return false;
  return a.key < b.key;
}

namespace {

void accumulate(TensorElement::Terms& terms, const TensorKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

void require_same_signature(const TensorElement& x, const TensorElement& y) {
  if (!same_signature(x.signature(), y.signature()))
    throw Error(ErrorKind::SignatureMismatch, "tensor elements have different factor signatures");
}

using FactorOptions = std::vector<std::pair<FactorTerm, Rational>>;

// Cartesian product of per-factor option lists, accumulated into `out`.
void expand_product(const std::vector<FactorOptions>& options, const Rational& scale, TensorElement::Terms& out) {
  if (options.empty()) {
    accumulate(out, TensorKey{}, scale);
    return;
  }
  for (const auto& opts : options)
    if (opts.empty()) return;
  std::vector<std::size_t> idx(options.size(), 0);
  TensorKey key(options.size());
  for (;;) {
    Rational c = scale;
    for (std::size_t f = 0; f < options.size(); ++f) {
      key[f] = options[f][idx[f]].first;
      c *= options[f][idx[f]].second;
    }
    accumulate(out, key, c);
    std::size_t f = options.size();
    while (f > 0) {
      --f;
      if (++idx[f] < options[f].size()) break;
      idx[f] = 0;
      if (f == 0) return;
    }
  }
}

} // namespace

void TensorElement::add_term(const TensorKey& key, const Rational& coeff) {
  if (key.size() != signature_.size()) throw Error(ErrorKind::SignatureMismatch, "tensor key has wrong arity");
  for (std::size_t f = 0; f < key.size(); ++f) {
    if (const auto* alg = std::get_if<AlgebraPtr>(&signature_[f])) {
      check_admissible(**alg, key[f].key.mu);
      check_admissible(**alg, key[f].key.nu);
      if (is_zero_term((*alg)->matrix, key[f].key)) return;
    }
  }
  accumulate(terms_, key, coeff);
}

TensorElement TensorElement::tensor(const std::vector<Part>& parts) {
  Signature sig;
  std::vector<FactorOptions> options;
  for (const auto& part : parts) {
    FactorOptions opts;
    if (const auto* ck = std::get_if<CKElement>(&part)) {
      sig.emplace_back(ck->algebra());
      for (const auto& [key, c] : ck->terms()) opts.emplace_back(FactorTerm{key, 0}, c);
    } else {
      sig.emplace_back(CircleFactor{});
      for (const auto& [d, c] : std::get<Laurent>(part).coeffs)
        if (c != 0) opts.emplace_back(FactorTerm{CKKey{}, d}, c);
    }
    options.push_back(std::move(opts));
  }
  TensorElement out(std::move(sig));
  expand_product(options, Rational(1), out.terms_);
  return out;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  require_same_signature(*this, o);
  for (const auto& [key, c] : o.terms_) accumulate(terms_, key, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  require_same_signature(*this, o);
  for (const auto& [key, c] : o.terms_) accumulate(terms_, key, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

TensorElement operator*(const TensorElement& x, const TensorElement& y) { return tensor_multiply(x, y); }

TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y) {
  require_same_signature(x, y);
  const auto& sig = x.signature();
  TensorElement out(sig);
  TensorElement::Terms acc;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      std::vector<FactorOptions> options(sig.size());
      for (std::size_t f = 0; f < sig.size(); ++f) {
        if (const auto* alg = std::get_if<AlgebraPtr>(&sig[f])) {
          for (auto& [key, c] : multiply_terms((*alg)->matrix, kx[f].key, ky[f].key))
            options[f].emplace_back(FactorTerm{std::move(key), 0}, c);
        } else {
          options[f].emplace_back(FactorTerm{CKKey{}, kx[f].degree + ky[f].degree}, Rational(1));
        }
      }
      expand_product(options, cx * cy, acc);
    }
  for (const auto& [key, c] : acc) out.add_term(key, c);
  return out;
}

TensorElement tensor_adjoint(const TensorElement& x) {
  TensorElement out(x.signature());
  for (const auto& [key, c] : x.terms()) {
    TensorKey adj = key;
    for (auto& f : adj) {
      std::swap(f.key.mu, f.key.nu);
      f.degree = -f.degree;
    }
    out.add_term(adj, c);
  }
  return out;
}

TensorElement TensorElement::expanded() const {
  std::vector<std::size_t> level(signature_.size(), 0);
  for (const auto& [key, c] : terms_)
    for (std::size_t f = 0; f < key.size(); ++f)
      level[f] = std::max({level[f], key[f].key.mu.size(), key[f].key.nu.size()});
  TensorElement out(signature_);
  for (const auto& [key, c] : terms_) {
    std::vector<FactorOptions> options(signature_.size());
    for (std::size_t f = 0; f < signature_.size(); ++f) {
      if (const auto* alg = std::get_if<AlgebraPtr>(&signature_[f])) {
        for (auto& k : expand_to_level((*alg)->matrix, key[f].key, level[f]))
          options[f].emplace_back(FactorTerm{std::move(k), 0}, Rational(1));
      } else {
        options[f].emplace_back(key[f], Rational(1));
      }
    }
    expand_product(options, c, out.terms_);
  }
  return out;
}

bool tensor_equal(const TensorElement& x, const TensorElement& y) {
  require_same_signature(x, y);
  return (x - y).expanded().is_zero();
}

namespace {

std::string render_circle(int d) {
  if (d == 0) return "1";
  if (d == 1) return "z";
  return "z^" + std::to_string(d);
}

} // namespace

std::string TensorElement::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::string body;
    for (std::size_t f = 0; f < key.size(); ++f) {
      if (f) body += " ⊗ ";
      if (const auto* alg = std::get_if<AlgebraPtr>(&signature_[f]))
        body += render_key(key[f].key, (*alg)->symbol, (*alg)->size());
      else
        body += render_circle(key[f].degree);
    }
    append_signed(out, c, body, first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

Signature signature_A_circle(const sft::ZeroOneMatrix& a) {
  return {make_algebra(a, AlgebraTag::A), CircleFactor{}};
}

Signature signature_A_AT(const sft::ZeroOneMatrix& a) {
  return {make_algebra(a, AlgebraTag::A), make_algebra(a, AlgebraTag::AT)};
}

Signature signature_A_AT_A(const sft::ZeroOneMatrix& a) {
  return {make_algebra(a, AlgebraTag::A), make_algebra(a, AlgebraTag::AT), make_algebra(a, AlgebraTag::A)};
}

TensorElement w_element(const sft::ZeroOneMatrix& a) {
  const auto s = make_algebra(a, AlgebraTag::A);
  const auto t = make_algebra(a, AlgebraTag::AT);
  TensorElement w(Signature{s, t});
  for (int i = 0; i < a.size(); ++i)
    w += TensorElement::tensor({ck_adjoint(CKElement::generator(s, i)), CKElement::generator(t, i)});
  return w;
}

TensorElement w_range_projection(const sft::ZeroOneMatrix& a) {
  const auto s = make_algebra(a, AlgebraTag::A);
  const auto t = make_algebra(a, AlgebraTag::AT);
  TensorElement p(Signature{s, t});
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a(i, j)) p += TensorElement::tensor({CKElement::term(s, {j}, {j}), CKElement::term(t, {i}, {i})});
  return p;
}

namespace {

const AlgebraPtr& circle_algebra(const TensorElement& x) {
  const auto& sig = x.signature();
  if (sig.size() != 2 || !std::holds_alternative<AlgebraPtr>(sig[0]) || !std::holds_alternative<CircleFactor>(sig[1]) ||
      std::get<AlgebraPtr>(sig[0])->tag != AlgebraTag::A)
    throw Error(ErrorKind::SignatureMismatch, "expected an element of O_A ⊗ C(S^1)");
  return std::get<AlgebraPtr>(sig[0]);
}

} // namespace

TensorElement theta(const TensorElement& x) {
  circle_algebra(x);
  TensorElement out(x.signature());
  for (const auto& [key, c] : x.terms()) {
    TensorKey k = key;
    k[1].degree += k[0].key.degree();
    out.add_term(k, c);
  }
  return out;
}

CKElement forget_grading(const TensorElement& x) {
  CKElement out(circle_algebra(x));
  for (const auto& [key, c] : x.terms()) out.add_term(key[0].key, c);
  return out;
}

TensorElement alpha_bar(const sft::ZeroOneMatrix& a, CircleGenerator g) {
  const Signature sig = signature_A_AT_A(a);
  const auto& s = std::get<AlgebraPtr>(sig[0]);
  const auto& t = std::get<AlgebraPtr>(sig[1]);
  TensorElement image_z(sig);
  for (int i = 0; i < a.size(); ++i)
    image_z += TensorElement::tensor(
        {CKElement::unit(s), CKElement::generator(t, i), ck_adjoint(CKElement::generator(s, i))});
  if (g.kind == CircleGenerator::Kind::Z) return image_z;
  if (g.k < 0 || g.k >= a.size()) throw Error(ErrorKind::UnsupportedGenerator, "generator index out of range");
  const auto sk = TensorElement::tensor({CKElement::generator(s, g.k), CKElement::unit(t), CKElement::unit(s)});
  return tensor_adjoint(image_z) * sk;
}

TensorElement alpha_bar(const TensorElement& g) {
  const auto& alg = circle_algebra(g);
  if (g.terms().size() == 1 && g.terms().begin()->second == 1) {
    const auto& key = g.terms().begin()->first;
    const CKKey& ck = key[0].key;
    if (ck.mu.empty() && ck.nu.empty() && key[1].degree == 1) return alpha_bar(alg->matrix, CircleGenerator::z());
    if (ck.mu.size() == 1 && ck.nu.empty() && key[1].degree == 0)
      return alpha_bar(alg->matrix, CircleGenerator::s(ck.mu[0]));
  }
  throw Error(ErrorKind::UnsupportedGenerator, "alpha_bar is defined on 1 ⊗ z and s_k ⊗ 1 only");
}

} // namespace ckdual::ckalg
