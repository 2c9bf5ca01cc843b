#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resdyn/errors.hpp"
#include "resdyn/json_io.hpp"
#include "resdyn/moduli.hpp"
#include "resdyn/reduction.hpp"

namespace resdyn {

// Full pipeline (bucketing into classes) runs for n = 1, d = 2; other
// shapes get resultants, reduction data and the coefficient proxy height.
struct CensusConfig {
  int n = 1;
  int d = 2;
  int coeff_bound = 2;
  Rational bound = 8;
  SearchBudget search = SearchBudget::defaults(2);
  std::filesystem::path output_path;
  // Bounds reported in the summary; empty means powers of two up to `bound`
  // plus `bound` itself.
  std::vector<Rational> bound_grid;
  unsigned threads = 1;
  // Stop after writing this many new records without summarizing; used to
  // exercise resumption.
  std::optional<std::size_t> stop_after;

  std::vector<Rational> effective_grid() const;
  std::filesystem::path summary_path() const;
  std::filesystem::path report_path() const;
};

// Raised when a census hard check fails; carries the offending record key.
class CensusAssertion : public Error {
 public:
  CensusAssertion(std::string key, const std::string& message)
      : Error("census_assertion", message + " [record " + key + "]"), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct CensusRecord {
  std::string key;
  MorphismModel model;
  Rational res;
  std::vector<LocalExponent> local;
  FactoredIdeal minimal_resultant;
  Integer norm;
  bool norm_certified = false;
  Integer norm_lower_bound;
  ModuliPoint moduli;
  std::optional<Rational> sigma3;
  // phi = [monic degree-d polynomial in X : Y^d].
  bool monic = false;
  bool in_gamma = false;
  bool possibly_in_gamma = false;

  std::vector<Integer> bad_primes() const;
};

// Canonical primitive models with integer coefficients in [-H, H] and
// Res != 0, each exactly once, in a fixed order. The sink returns false to
// stop early.
void enumerate_models(const CensusConfig& config, const std::function<bool(const MorphismModel&)>& sink);
std::vector<MorphismModel> enumerate_models(const CensusConfig& config);

CensusRecord make_census_record(const MorphismModel& phi, const CensusConfig& config);
Json census_record_to_json(const CensusRecord& record);
CensusRecord census_record_from_json(const Json& j);

// Height bound compared exactly: max |coordinate| of the moduli point <= B,
// which is moduli_height <= log(B).
bool height_within(const CensusRecord& record, const Rational& bound);
// Upper-bound norm <= B and height within B.
bool certified_member(const CensusRecord& record, const Rational& bound);
// Height within B and the norm could still be <= B once the search bound is
// refined (norm_lower_bound <= B when uncertified).
bool possible_member(const CensusRecord& record, const Rational& bound);

struct ClassCount {
  std::size_t lower = 0;
  std::size_t upper = 0;
};

struct CensusRow {
  Rational bound;
  std::vector<Integer> s_b;
  std::size_t gamma_certified = 0;
  std::size_t gamma_possible = 0;
  // Distinct moduli points among records of height <= log B.
  std::size_t northcott_points = 0;
  std::optional<ClassCount> classes_certified;
  std::optional<ClassCount> classes_possible;
  bool s_b_containment = true;
};

struct CensusClass {
  std::string class_id;
  SigmaPair key;
  std::vector<std::string> members;
};

struct CensusSummary {
  int n = 1;
  int d = 2;
  int coeff_bound = 0;
  Rational bound;
  std::size_t records = 0;
  std::size_t written_this_run = 0;
  bool complete = false;
  std::size_t monic_checked = 0;
  std::size_t sigma_relation_checked = 0;
  std::vector<CensusRow> rows;
  std::vector<CensusClass> classes;

  Json to_json() const;
  std::string report_table() const;
};

std::vector<CensusRecord> read_census_records(const std::filesystem::path& path);

// Summary over an existing record set; runs the hard checks and bucketing.
CensusSummary summarize_census(const std::vector<CensusRecord>& records, const CensusConfig& config);

// Streams enumerate_models through the record pipeline into
// config.output_path (JSON lines, resumed when the file exists), then writes
// the summary JSON and the text report next to it.
CensusSummary run_census(const CensusConfig& config);

// Plain-text table rebuilt from a summary JSON document.
std::string report_from_summary_json(const Json& summary);

}  // namespace resdyn
