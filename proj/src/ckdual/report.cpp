#include "ckdual/report.hpp"

#include <sstream>

#include "ckdual/error.hpp"

using nlohmann::json;

namespace {

// Small integers stay numbers; anything beyond 64 bits is a decimal string.
json big_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

mpz_class big_from_json(const json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(j.get<long>());
}

json bigs_to_json(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big_to_json(x));
  return a;
}

std::vector<mpz_class> bigs_from_json(const json& j) {
  std::vector<mpz_class> out;
  for (const auto& x : j) out.push_back(big_from_json(x));
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render_delta(const std::map<std::string, long long>& delta) {
  std::string out;
  for (const auto& [row, v] : delta) {
    if (!out.empty()) out += ", ";
    out += row + ": " + std::to_string(v);
  }
  return "{" + out + "}";
}

std::string column_label(const std::string& c) { return c.empty() ? "Ω" : c; }

} // namespace

namespace ckdual::sft {

void to_json(json& j, const ZeroOneMatrix& a) { j = a.rows(); }

void from_json(const json& j, ZeroOneMatrix& a) {
  a = validate_matrix(j.get<std::vector<std::vector<long long>>>());
}

} // namespace ckdual::sft

namespace ckdual::zlinalg {

void to_json(json& j, const FGAbelianGroup& g) {
  j = json{{"free_rank", g.free_rank}, {"torsion", bigs_to_json(g.torsion)}};
}

void from_json(const json& j, FGAbelianGroup& g) {
  g.free_rank = j.at("free_rank").get<int>();
  g.torsion = bigs_from_json(j.at("torsion"));
}

} // namespace ckdual::zlinalg

namespace ckdual::ktheory {

void to_json(json& j, const AlgebraGroups& g) {
  j = json{{"K0", g.K0}, {"K1", g.K1}, {"K^0", g.Khom0}, {"K^1", g.Khom1}};
}

void from_json(const json& j, AlgebraGroups& g) {
  j.at("K0").get_to(g.K0);
  j.at("K1").get_to(g.K1);
  j.at("K^0").get_to(g.Khom0);
  j.at("K^1").get_to(g.Khom1);
}

void to_json(json& j, const DualityReport& d) {
  j = json{{"presentation_match_K0_Khom1", d.presentation_match_K0_Khom1},
           {"presentation_match_K1_Khom0", d.presentation_match_K1_Khom0},
           {"abstract_iso_cokernels", d.abstract_iso_cokernels},
           {"invariant_factors_A", bigs_to_json(d.invariant_factors_A)},
           {"invariant_factors_AT", bigs_to_json(d.invariant_factors_AT)}};
}

void from_json(const json& j, DualityReport& d) {
  j.at("presentation_match_K0_Khom1").get_to(d.presentation_match_K0_Khom1);
  j.at("presentation_match_K1_Khom0").get_to(d.presentation_match_K1_Khom0);
  j.at("abstract_iso_cokernels").get_to(d.abstract_iso_cokernels);
  d.invariant_factors_A = bigs_from_json(j.at("invariant_factors_A"));
  d.invariant_factors_AT = bigs_from_json(j.at("invariant_factors_AT"));
}

} // namespace ckdual::ktheory

namespace ckdual::fock {

void to_json(json& j, const ColumnDefect& d) {
  j = json{{"column", d.column}, {"column_length", d.column_length}, {"delta", d.delta}};
}

void from_json(const json& j, ColumnDefect& d) {
  j.at("column").get_to(d.column);
  j.at("column_length").get_to(d.column_length);
  j.at("delta").get_to(d.delta);
}

void to_json(json& j, const RelationReport& r) {
  j = json{{"relation", r.relation}, {"k", r.k},           {"l", r.l},
           {"holds", r.holds},       {"valid_up_to", r.valid_up_to}, {"defects", r.defects}};
}

void from_json(const json& j, RelationReport& r) {
  j.at("relation").get_to(r.relation);
  j.at("k").get_to(r.k);
  j.at("l").get_to(r.l);
  j.at("holds").get_to(r.holds);
  j.at("valid_up_to").get_to(r.valid_up_to);
  j.at("defects").get_to(r.defects);
}

void to_json(json& j, const SectorIndex& s) {
  j = json{{"length", s.length}, {"dimension", s.dimension}, {"kernel", s.kernel}, {"cokernel", s.cokernel},
           {"index", s.kernel - s.cokernel}};
}

void from_json(const json& j, SectorIndex& s) {
  j.at("length").get_to(s.length);
  j.at("dimension").get_to(s.dimension);
  j.at("kernel").get_to(s.kernel);
  j.at("cokernel").get_to(s.cokernel);
}

void to_json(json& j, const IndexReport& r) {
  j = json{{"vacuum_eigenvalue", r.vacuum_eigenvalue},
           {"vacuum_is_eigenvector", r.vacuum_is_eigenvector},
           {"preserves_sectors", r.preserves_sectors},
           {"valid_up_to", r.valid_up_to},
           {"sectors", r.sectors}};
}

void from_json(const json& j, IndexReport& r) {
  j.at("vacuum_eigenvalue").get_to(r.vacuum_eigenvalue);
  j.at("vacuum_is_eigenvector").get_to(r.vacuum_is_eigenvector);
  j.at("preserves_sectors").get_to(r.preserves_sectors);
  j.at("valid_up_to").get_to(r.valid_up_to);
  j.at("sectors").get_to(r.sectors);
}

} // namespace ckdual::fock

namespace ckdual::duality {

void to_json(json& j, const HybridDefect& d) {
  j = json{{"k", d.k},
           {"ck_term", d.ck_term},
           {"column", d.column},
           {"column_length", d.column_length},
           {"delta", d.delta}};
}

void from_json(const json& j, HybridDefect& d) {
  j.at("k").get_to(d.k);
  j.at("ck_term").get_to(d.ck_term);
  j.at("column").get_to(d.column);
  j.at("column_length").get_to(d.column_length);
  j.at("delta").get_to(d.delta);
}

void to_json(json& j, const ItemResult& r) {
  j = json{{"id", r.id},
           {"statement", r.statement},
           {"holds", r.holds},
           {"valid_up_to", r.valid_up_to},
           {"defects", r.defects},
           {"symbolic_residual", r.symbolic_residual},
           {"vacuum_adjacent", r.vacuum_adjacent},
           {"max_defect_length", r.max_defect_length},
           {"rank_bound", r.rank_bound}};
}

void from_json(const json& j, ItemResult& r) {
  j.at("id").get_to(r.id);
  j.at("statement").get_to(r.statement);
  j.at("holds").get_to(r.holds);
  j.at("valid_up_to").get_to(r.valid_up_to);
  j.at("defects").get_to(r.defects);
  j.at("symbolic_residual").get_to(r.symbolic_residual);
  j.at("vacuum_adjacent").get_to(r.vacuum_adjacent);
  j.at("max_defect_length").get_to(r.max_defect_length);
  j.at("rank_bound").get_to(r.rank_bound);
}

void to_json(json& j, const LemmaReport& r) {
  j = json{{"lemma", r.lemma}, {"matrix", r.matrix}, {"m_max", r.m_max}, {"items", r.items}};
}

void from_json(const json& j, LemmaReport& r) {
  j.at("lemma").get_to(r.lemma);
  j.at("matrix").get_to(r.matrix);
  j.at("m_max").get_to(r.m_max);
  j.at("items").get_to(r.items);
}

} // namespace ckdual::duality

namespace ckdual::report {

void to_json(json& j, const ValidateReport& r) {
  j = json{{"matrix", r.matrix},       {"n", r.matrix.size()}, {"valid", true},
           {"irreducible", r.irreducible}, {"aperiodic", r.aperiodic}, {"cantor", r.cantor},
           {"warnings", r.warnings}};
}

void from_json(const json& j, ValidateReport& r) {
  j.at("matrix").get_to(r.matrix);
  j.at("irreducible").get_to(r.irreducible);
  j.at("aperiodic").get_to(r.aperiodic);
  j.at("cantor").get_to(r.cantor);
  j.at("warnings").get_to(r.warnings);
}

void to_json(json& j, const WordsReport& r) {
  j = json{{"matrix", r.matrix}, {"length", r.length}, {"count", r.count}, {"words", r.words}};
}

void from_json(const json& j, WordsReport& r) {
  j.at("matrix").get_to(r.matrix);
  j.at("length").get_to(r.length);
  j.at("count").get_to(r.count);
  j.at("words").get_to(r.words);
}

void to_json(json& j, const FockReport& r) {
  j = json{{"matrix", r.matrix}, {"m_max", r.m_max}, {"relation", r.relation}, {"holds", r.holds},
           {"reports", r.reports}};
}

void from_json(const json& j, FockReport& r) {
  j.at("matrix").get_to(r.matrix);
  j.at("m_max").get_to(r.m_max);
  j.at("relation").get_to(r.relation);
  j.at("holds").get_to(r.holds);
  j.at("reports").get_to(r.reports);
}

void to_json(json& j, const PairingReport& r) {
  j = json{{"matrix", r.matrix}, {"m_max", r.m_max}, {"index_zero", r.index_zero}, {"index", r.index}};
}

void from_json(const json& j, PairingReport& r) {
  j.at("matrix").get_to(r.matrix);
  j.at("m_max").get_to(r.m_max);
  j.at("index_zero").get_to(r.index_zero);
  j.at("index").get_to(r.index);
}

void to_json(json& j, const KTheoryDocument& r) {
  j = json{{"matrix", r.groups.matrix}, {"O_A", r.groups.O_A}, {"O_AT", r.groups.O_AT}, {"duality", r.duality}};
}

void from_json(const json& j, KTheoryDocument& r) {
  j.at("matrix").get_to(r.groups.matrix);
  j.at("O_A").get_to(r.groups.O_A);
  j.at("O_AT").get_to(r.groups.O_AT);
  j.at("duality").get_to(r.duality);
}

// ---------------------------------------------------------------------------

ValidateReport make_validate(const sft::ZeroOneMatrix& a) {
  ValidateReport r;
  r.matrix = a;
  r.irreducible = sft::is_irreducible(a);
  r.aperiodic = sft::is_aperiodic(a);
  r.cantor = sft::satisfies_cantor_condition(a);
  if (!r.irreducible) r.warnings.push_back("matrix is reducible; the Cantor check only covers irreducible matrices");
  if (sft::is_permutation_matrix(a)) r.warnings.push_back("permutation matrix: the shift space is finite");
  return r;
}

WordsReport make_words(const sft::ZeroOneMatrix& a, int length) {
  if (length < 0) throw Error(ErrorKind::InvalidArgument, "--length must be nonnegative");
  WordsReport r;
  r.matrix = a;
  r.length = length;
  r.count = sft::count_words(a, length).get_str();
  for (const auto& w : sft::enumerate_words(a, length)) r.words.push_back(sft::word_to_string(w, a.size()));
  return r;
}

FockReport make_fock(const sft::ZeroOneMatrix& a, int m_max, const std::string& relation) {
  if (m_max < 2) throw Error(ErrorKind::InvalidArgument, "--max-length must be at least 2");
  FockReport r;
  r.matrix = a;
  r.m_max = m_max;
  r.relation = relation;
  r.reports = fock::verify_creation_relations(fock::make_basis(a, m_max), relation);
  r.holds = std::all_of(r.reports.begin(), r.reports.end(), [](const auto& x) { return x.holds; });
  return r;
}

PairingReport make_pairing(const sft::ZeroOneMatrix& a, int m_max) {
  if (m_max < 2) throw Error(ErrorKind::InvalidArgument, "--max-length must be at least 2");
  PairingReport r;
  r.matrix = a;
  r.m_max = m_max;
  r.index = fock::rotation_operator(fock::make_basis(a, m_max)).report;
  r.index_zero = std::all_of(r.index.sectors.begin(), r.index.sectors.end(),
                             [](const auto& s) { return s.length == 0 || s.kernel == s.cokernel; });
  return r;
}

KTheoryDocument make_ktheory(const sft::ZeroOneMatrix& a) {
  return KTheoryDocument{ktheory::k_groups(a), ktheory::duality_report(a)};
}

bool duality_holds(const ktheory::DualityReport& d) {
  return d.presentation_match_K0_Khom1 && d.presentation_match_K1_Khom0 && d.abstract_iso_cokernels;
}

// ---------------------------------------------------------------------------

namespace {

std::string render_matrix(const sft::ZeroOneMatrix& a) {
  std::string out;
  for (const auto& row : a.rows()) {
    out += "  ";
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
    out += "\n";
  }
  return out;
}

std::string join_bigs(const std::vector<mpz_class>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ", ") + x.get_str();
  return "[" + out + "]";
}

} // namespace

std::string render_text(const ValidateReport& r) {
  std::ostringstream os;
  os << "matrix (n = " << r.matrix.size() << "):\n" << render_matrix(r.matrix);
  os << "valid: yes\n";
  os << "irreducible: " << yes_no(r.irreducible) << "\n";
  os << "aperiodic: " << yes_no(r.aperiodic) << "\n";
  os << "cantor: " << (r.cantor ? "true" : "false") << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string render_text(const WordsReport& r) {
  std::ostringstream os;
  os << "admissible words of length " << r.length << ": " << r.count << "\n";
  for (const auto& w : r.words) os << "  " << (w.empty() ? "(empty)" : w) << "\n";
  return os.str();
}

std::string render_text(const ktheory::DualityReport& d) {
  std::ostringstream os;
  os << "K0(O_A) and K^1(O_AT) share a presentation: " << yes_no(d.presentation_match_K0_Khom1) << "\n";
  os << "K1(O_A) and K^0(O_AT) share a presentation: " << yes_no(d.presentation_match_K1_Khom0) << "\n";
  os << "coker(1 - A) and coker(1 - A^T) isomorphic: " << yes_no(d.abstract_iso_cokernels) << "\n";
  os << "invariant factors of coker(1 - A):   " << join_bigs(d.invariant_factors_A) << "\n";
  os << "invariant factors of coker(1 - A^T): " << join_bigs(d.invariant_factors_AT) << "\n";
  return os.str();
}

std::string render_text(const KTheoryDocument& r) {
  std::ostringstream os;
  const auto block = [&](const char* name, const ktheory::AlgebraGroups& g) {
    os << name << ":\n";
    os << "  K0  = " << zlinalg::to_string(g.K0) << "\n";
    os << "  K1  = " << zlinalg::to_string(g.K1) << "\n";
    os << "  K^0 = " << zlinalg::to_string(g.Khom0) << "\n";
    os << "  K^1 = " << zlinalg::to_string(g.Khom1) << "\n";
  };
  os << "matrix:\n" << render_matrix(r.groups.matrix);
  block("O_A", r.groups.O_A);
  block("O_AT", r.groups.O_AT);
  os << render_text(r.duality);
  return os.str();
}

std::string render_text(const FockReport& r) {
  std::ostringstream os;
  os << "creation operator relations, m_max = " << r.m_max << "\n";
  for (const auto& rep : r.reports) {
    os << "  " << rep.relation << " k=" << rep.k;
    if (rep.l) os << " l=" << rep.l;
    os << ": " << (rep.holds ? "holds" : "DEFECT") << " (valid up to length " << rep.valid_up_to << ")\n";
    for (const auto& d : rep.defects)
      os << "    column " << column_label(d.column) << " (length " << d.column_length << "): "
         << render_delta(d.delta) << "\n";
  }
  os << (r.holds ? "all relations hold\n" : "defects found\n");
  return os.str();
}

std::string render_text(const duality::LemmaReport& r) {
  std::ostringstream os;
  os << "lemma " << r.lemma << ", m_max = " << r.m_max << "\n";
  for (const auto& item : r.items) {
    os << "  " << item.id << ") " << item.statement << ": " << (item.holds ? "holds" : "DEFECT");
    if (item.symbolic_residual.empty() && item.valid_up_to > 0)
      os << " (valid up to length " << item.valid_up_to << ")";
    os << "\n";
    if (!item.symbolic_residual.empty()) os << "    residual: " << item.symbolic_residual << "\n";
    for (const auto& d : item.defects) {
      os << "    ";
      if (d.k) os << "k=" << d.k << " ";
      os << d.ck_term << " at column " << column_label(d.column) << " (length " << d.column_length
         << "): " << render_delta(d.delta) << "\n";
    }
    if (!item.defects.empty())
      os << "    rank bound " << item.rank_bound << ", vacuum adjacent: " << yes_no(item.vacuum_adjacent) << "\n";
  }
  os << (r.all_hold() ? "all items hold\n" : "defects found\n");
  return os.str();
}

std::string render_text(const PairingReport& r) {
  std::ostringstream os;
  os << "X = sum_i L_i* R_i, m_max = " << r.m_max << ", valid up to length " << r.index.valid_up_to << "\n";
  if (r.index.vacuum_is_eigenvector)
    os << "X Ω = " << r.index.vacuum_eigenvalue << " Ω\n";
  else
    os << "Ω is not an eigenvector of X\n";
  os << "preserves word length: " << yes_no(r.index.preserves_sectors) << "\n";
  for (const auto& s : r.index.sectors)
    os << "  length " << s.length << ": dim " << s.dimension << ", ker " << s.kernel << ", coker " << s.cokernel
       << ", index " << s.kernel - s.cokernel << "\n";
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace ckdual::report
