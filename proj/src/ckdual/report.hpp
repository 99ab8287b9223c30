#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ckdual/duality.hpp"
#include "ckdual/fock.hpp"
#include "ckdual/ktheory.hpp"
#include "ckdual/sft.hpp"

// JSON and plain-text rendering of every report the CLI prints. The JSON
// serializers are found by nlohmann::json through ADL, so `json j = report;`
// and `j.get<Report>()` both work and round-trip exactly.

namespace ckdual::sft {
void to_json(nlohmann::json& j, const ZeroOneMatrix& a);
void from_json(const nlohmann::json& j, ZeroOneMatrix& a);
} // namespace ckdual::sft

namespace ckdual::zlinalg {
void to_json(nlohmann::json& j, const FGAbelianGroup& g);
void from_json(const nlohmann::json& j, FGAbelianGroup& g);
} // namespace ckdual::zlinalg

namespace ckdual::ktheory {
void to_json(nlohmann::json& j, const AlgebraGroups& g);
void from_json(const nlohmann::json& j, AlgebraGroups& g);
void to_json(nlohmann::json& j, const DualityReport& d);
void from_json(const nlohmann::json& j, DualityReport& d);
} // namespace ckdual::ktheory

namespace ckdual::fock {
void to_json(nlohmann::json& j, const ColumnDefect& d);
void from_json(const nlohmann::json& j, ColumnDefect& d);
void to_json(nlohmann::json& j, const RelationReport& r);
void from_json(const nlohmann::json& j, RelationReport& r);
void to_json(nlohmann::json& j, const SectorIndex& s);
void from_json(const nlohmann::json& j, SectorIndex& s);
void to_json(nlohmann::json& j, const IndexReport& r);
void from_json(const nlohmann::json& j, IndexReport& r);
} // namespace ckdual::fock

namespace ckdual::duality {
void to_json(nlohmann::json& j, const HybridDefect& d);
void from_json(const nlohmann::json& j, HybridDefect& d);
void to_json(nlohmann::json& j, const ItemResult& r);
void from_json(const nlohmann::json& j, ItemResult& r);
void to_json(nlohmann::json& j, const LemmaReport& r);
void from_json(const nlohmann::json& j, LemmaReport& r);
} // namespace ckdual::duality

namespace ckdual::report {

using nlohmann::json;

// Output of one CLI command: the document to print and whether every check
// it ran came out clean.
struct CommandOutput {
  json document;
  std::string text;
  bool all_hold = true;
};

struct ValidateReport {
  sft::ZeroOneMatrix matrix;
  bool irreducible = false;
  bool aperiodic = false;
  bool cantor = false;
  std::vector<std::string> warnings;
  bool operator==(const ValidateReport&) const = default;
};

struct WordsReport {
  sft::ZeroOneMatrix matrix;
  int length = 0;
  std::string count;  // decimal, may exceed 64 bits
  std::vector<std::string> words;
  bool operator==(const WordsReport&) const = default;
};

struct FockReport {
  sft::ZeroOneMatrix matrix;
  int m_max = 0;
  std::string relation;
  bool holds = false;
  std::vector<fock::RelationReport> reports;
  bool operator==(const FockReport&) const = default;
};

struct PairingReport {
  sft::ZeroOneMatrix matrix;
  int m_max = 0;
  bool index_zero = false;  // every sector of length >= 1 has index 0
  fock::IndexReport index;
  bool operator==(const PairingReport&) const = default;
};

struct KTheoryDocument {
  ktheory::KTheoryReport groups;
  ktheory::DualityReport duality;
  bool operator==(const KTheoryDocument&) const = default;
};

void to_json(json& j, const ValidateReport& r);
void from_json(const json& j, ValidateReport& r);
void to_json(json& j, const WordsReport& r);
void from_json(const json& j, WordsReport& r);
void to_json(json& j, const FockReport& r);
void from_json(const json& j, FockReport& r);
void to_json(json& j, const PairingReport& r);
void from_json(const json& j, PairingReport& r);
void to_json(json& j, const KTheoryDocument& r);
void from_json(const json& j, KTheoryDocument& r);

ValidateReport make_validate(const sft::ZeroOneMatrix& a);
WordsReport make_words(const sft::ZeroOneMatrix& a, int length);
FockReport make_fock(const sft::ZeroOneMatrix& a, int m_max, const std::string& relation);
PairingReport make_pairing(const sft::ZeroOneMatrix& a, int m_max);
KTheoryDocument make_ktheory(const sft::ZeroOneMatrix& a);

std::string render_text(const ValidateReport& r);
std::string render_text(const WordsReport& r);
std::string render_text(const KTheoryDocument& r);
std::string render_text(const ktheory::DualityReport& r);
std::string render_text(const FockReport& r);
std::string render_text(const duality::LemmaReport& r);
std::string render_text(const PairingReport& r);

bool duality_holds(const ktheory::DualityReport& d);

// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

} // namespace ckdual::report
