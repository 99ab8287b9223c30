// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "ckdual/duality.hpp"
#include "ckdual/ktheory.hpp"
#include "support.hpp"

using namespace ckdual;
using namespace testsupport;
using ckalg::AlgebraTag;
using ckalg::CKElement;
using ckalg::TensorElement;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    if (o.pass) o.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s";
    o.pass = false;
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, secs,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  std::fflush(stdout);
}

std::string name(const sft::ZeroOneMatrix& a) {
  std::string s;
  for (const auto& row : a.rows()) {
    s += s.empty() ? "" : "/";
    for (int x : row) s += std::to_string(x);
  }
  return s;
}

// One representative per class under simultaneous relabeling of letters:
// the matrix whose bit pattern is smallest among its relabelings.
std::vector<sft::ZeroOneMatrix> relabeling_classes(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto bits_of = [n](const sft::ZeroOneMatrix& a, const std::vector<int>& q) {
    std::uint32_t b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(q[i], q[j])) b |= 1u << (i * n + j);
    return b;
  };
  std::vector<sft::ZeroOneMatrix> out;
  for (const auto& a : all_valid(n)) {
    const std::uint32_t own = bits_of(a, perms.front());
    bool minimal = true;
    for (const auto& q : perms) minimal = minimal && bits_of(a, q) >= own;
    if (minimal) out.push_back(a);
  }
  return out;
}

std::vector<sft::ZeroOneMatrix> sample_matrices() {
  std::vector<sft::ZeroOneMatrix> out{all_ones(2), all_ones(3), fibonacci(), matrix({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
                                      matrix({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}), matrix({{1}}),
                                      matrix({{1, 1}, {0, 1}})};
  for (int t = 0; t < 8; ++t) out.push_back(random_valid(uniform(2, 4)));
  return out;
}

} // namespace

int main() {
  criterion(1, "K-theory of full shifts, n = 2..6", 1.0, [] {
    Outcome o;
    for (int n = 2; n <= 6; ++n) {
      const auto g = ktheory::groups_of(all_ones(n));
      const zlinalg::FGAbelianGroup expected = n == 2 ? zlinalg::FGAbelianGroup{} : zlinalg::FGAbelianGroup{0, {n - 1}};
      o.require(g.K0 == expected, "K0 wrong at n = " + std::to_string(n));
      o.require(g.K1.is_trivial(), "K1 nonzero at n = " + std::to_string(n));
      // Independent check through the Smith diagonal of 1 - A^T.
      const auto diag = zlinalg::smith_normal_form(ktheory::one_minus(sft::transpose(all_ones(n)))).diagonal();
      zlinalg::BigInt order = 1;
      for (const auto& d : diag) order *= d;
      o.require(order == n - 1, "Smith diagonal disagrees at n = " + std::to_string(n));
    }
    return o;
  });

  criterion(2, "duality square on 60 random aperiodic matrices, n <= 8", 5.0, [] {
    Outcome o;
    for (int t = 0; t < 60; ++t) {
      const auto a = random_aperiodic(uniform(1, 8));
      const auto d = ktheory::duality_report(a);
      o.require(d.presentation_match_K0_Khom1 && d.presentation_match_K1_Khom0, "presentation mismatch at " + name(a));
      o.require(d.abstract_iso_cokernels && d.invariant_factors_A == d.invariant_factors_AT,
                "cokernels differ at " + name(a));
      const auto k = ktheory::k_groups(a);
      o.require(k.O_A.K0 == k.O_AT.Khom1 && k.O_A.K1 == k.O_AT.Khom0, "group mismatch at " + name(a));
    }
    return o;
  });

  criterion(3, "Smith normal form postconditions on 200 random matrices", 0, [] {
    Outcome o;
    for (int t = 0; t < 200; ++t) {
      const int r = uniform(1, 10);
      const int c = uniform(1, 10);
      zlinalg::IntMatrix m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = uniform(-20, 20);
      const auto f = zlinalg::smith_normal_form(m);
      o.require(f.U * m * f.V == f.S, "U M V != S");
      o.require(abs(zlinalg::determinant(f.U)) == 1 && abs(zlinalg::determinant(f.V)) == 1, "not unimodular");
      const auto d = f.diagonal();
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        o.require(d[i + 1] == 0 ? true : (d[i] != 0 && d[i + 1] % d[i] == 0), "divisibility chain broken");
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          if (i != j) o.require(f.S(i, j) == 0, "S not diagonal");
    }
    return o;
  });

  criterion(4, "creation operator relations for every matrix with n <= 4, m_max = 6", 10.0, [] {
    Outcome o;
    for (int n = 1; n <= 4; ++n)
      for (const auto& a : relabeling_classes(n)) {
        const auto b = fock::make_basis(a, 6);
        for (const auto& rep : fock::verify_creation_relations(b, "all")) {
          if (rep.relation != "iv") {
            o.require(rep.holds, "relation " + rep.relation + " fails at " + name(a));
            continue;
          }
          const int k = rep.k - 1;
          const int l = rep.l - 1;
          if (a(k, l)) {
            o.require(rep.holds, "relation iv fails at " + name(a));
            continue;
          }
          // (A_kl - 1)|xi_l><xi_k| exactly.
          const bool exact = rep.defects.size() == 1 && rep.defects[0].column == sft::word_to_string({k}, n) &&
                             rep.defects[0].delta ==
                                 std::map<std::string, long long>{{sft::word_to_string({l}, n), -1}};
          o.require(exact, "relation iv defect is not rank one at " + name(a));
        }
      }
    return o;
  });

  criterion(5, "W and V identities: full shifts exact, defects local and stable", 0, [] {
    Outcome o;
    for (int n = 2; n <= 3; ++n) {
      const auto b = fock::make_basis(all_ones(n), 5);
      for (const auto& r : {duality::verify_lemma_W(b), duality::verify_lemma_V(b)})
        for (const auto& item : r.items)
          o.require(item.holds && item.defects.empty(), "item " + r.lemma + " " + item.id + " fails for n = " +
                                                            std::to_string(n));
    }
    for (const auto& a : {fibonacci(), all_ones(2)}) {
      const auto b5 = fock::make_basis(a, 5);
      const auto b7 = fock::make_basis(a, 7);
      const std::vector<std::pair<duality::LemmaReport, duality::LemmaReport>> pairs{
          {duality::verify_lemma_W(b5), duality::verify_lemma_W(b7)},
          {duality::verify_lemma_V(b5), duality::verify_lemma_V(b7)}};
      for (const auto& [small, large] : pairs)
        for (std::size_t i = 0; i < small.items.size(); ++i) {
          const auto& s = small.items[i];
          const auto& l = large.items[i];
          for (const auto* item : {&s, &l})
            for (const auto& d : item->defects)
              o.require(d.column_length <= 1, "deep defect in item " + item->id + " at " + name(a));
          std::vector<duality::HybridDefect> clipped;
          for (const auto& d : l.defects)
            if (d.column_length <= s.valid_up_to) clipped.push_back(d);
          o.require(s.holds == l.holds && s.defects == clipped && s.symbolic_residual == l.symbolic_residual,
                    "item " + s.id + " changes between m_max 5 and 7 at " + name(a));
        }
    }
    return o;
  });

  criterion(6, "w*w = ww* = range projection; unit for full shifts", 0, [] {
    Outcome o;
    auto mats = sample_matrices();
    for (int n = 2; n <= 4; ++n) mats.push_back(all_ones(n));
    for (const auto& a : mats) {
      const auto w = ckalg::w_element(a);
      const auto ws = ckalg::tensor_adjoint(w);
      const auto p = ckalg::w_range_projection(a);
      o.require(ckalg::tensor_equal(ws * w, p) && ckalg::tensor_equal(w * ws, p), "w identity fails at " + name(a));
    }
    for (int n = 2; n <= 4; ++n) {
      const auto a = all_ones(n);
      const auto one = TensorElement::tensor({CKElement::unit(ckalg::make_algebra(a, AlgebraTag::A)),
                                              CKElement::unit(ckalg::make_algebra(a, AlgebraTag::AT))});
      o.require(ckalg::tensor_equal(ckalg::w_range_projection(a), one), "range projection is not 1 at n = " +
                                                                            std::to_string(n));
    }
    return o;
  });

  criterion(7, "gauge twist is a *-automorphism fixing degree zero", 0, [] {
    Outcome o;
    for (const auto& a : sample_matrices()) {
      const auto s = ckalg::make_algebra(a, AlgebraTag::A);
      const ckalg::Signature sig{s, ckalg::CircleFactor{}};
      const auto graded = [](const CKElement& x, int d) {
        return TensorElement::tensor({x, ckalg::Laurent::monomial(d)});
      };
      for (int t = 0; t < 25; ++t) {
        TensorElement x(sig), y(sig);
        for (int k = 0; k < 2; ++k) {
          x += graded(random_element(s, 1, 3), uniform(-2, 2));
          y += graded(random_element(s, 1, 3), uniform(-2, 2));
        }
        o.require(ckalg::tensor_equal(ckalg::theta(x * y), ckalg::theta(x) * ckalg::theta(y)), "not multiplicative");
        o.require(ckalg::tensor_equal(ckalg::theta(ckalg::tensor_adjoint(x)), ckalg::tensor_adjoint(ckalg::theta(x))),
                  "not a *-map");
        const auto mu = random_word(a, uniform(0, 3));
        const auto nu = random_word(a, static_cast<int>(mu.size()));
        const auto z = graded(CKElement::term(s, mu, nu), uniform(-2, 2));
        o.require(ckalg::tensor_equal(ckalg::theta(z), z), "degree zero term moved");
      }
      const int n = a.size();
      std::vector<TensorElement> img;
      for (int k = 0; k < n; ++k) img.push_back(ckalg::theta(graded(CKElement::generator(s, k), 0)));
      TensorElement sum(sig);
      for (int k = 0; k < n; ++k) sum += img[k] * ckalg::tensor_adjoint(img[k]);
      o.require(ckalg::tensor_equal(sum, graded(CKElement::unit(s), 0)), "range relation broken at " + name(a));
      for (int k = 0; k < n; ++k) {
        TensorElement rhs(sig);
        for (int i = 0; i < n; ++i)
          if (a(k, i)) rhs += img[i] * ckalg::tensor_adjoint(img[i]);
        o.require(ckalg::tensor_equal(ckalg::tensor_adjoint(img[k]) * img[k], rhs),
                  "source relation broken at " + name(a));
      }
    }
    return o;
  });

  criterion(8, "symbolic products agree with the Fock oracle on 600 instances", 0, [] {
    Outcome o;
    const auto mats = sample_matrices();
    for (int t = 0; t < 600; ++t) {
      const auto& a = mats[static_cast<std::size_t>(t) % mats.size()];
      const auto s = ckalg::make_algebra(a, AlgebraTag::A);
      const auto x = random_element(s, uniform(1, 3), 3);
      const auto y = random_element(s, uniform(1, 3), 3);
      const auto xy = x * y;
      for (const auto& w : probe_words(a, probe_length(x, y) + 2)) {
        const auto v = basis_vector(w);
        o.require(fock::evaluate(xy, v) == fock::evaluate(x, fock::evaluate(y, v)), "product disagrees at " + name(a));
      }
      const auto z = random_element(s, uniform(1, 3), 2);
      o.require(ckalg::ck_equal(x, z) == oracle_equal(x, z), "equality test disagrees at " + name(a));
    }
    return o;
  });

  criterion(9, "X = sum L_i* R_i has index 0 per sector and X Omega = n Omega", 0, [] {
    Outcome o;
    for (const auto& a : sample_matrices()) {
      const auto r = fock::rotation_operator(fock::make_basis(a, 5)).report;
      o.require(r.vacuum_is_eigenvector && r.vacuum_eigenvalue == a.size(), "vacuum eigenvalue wrong at " + name(a));
      for (const auto& s : r.sectors)
        if (s.length >= 1) o.require(s.kernel == s.cokernel, "nonzero index at " + name(a));
    }
    return o;
  });

  return failures == 0 ? 0 : 1;
}
