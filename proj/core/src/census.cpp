#include "resdyn/census.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "resdyn/conjugacy.hpp"
#include "resdyn/number_theory.hpp"
#include "resdyn/resultant.hpp"

namespace resdyn {
namespace {

constexpr std::size_t kBatchSize = 64;

bool is_monic_polynomial_map(const MorphismModel& phi) {
  // [a X^d + ... : a Y^d] on P^1 with the model primitive: the polynomial has
  // integer coefficients over a leading 1 only when a = +-1.
  if (phi.dimension() != 1) return false;
  const auto& top = phi.form(0);
  const auto& bottom = phi.form(1);
  const auto d = static_cast<std::size_t>(phi.degree());
  if (top[0] != bottom[d]) return false;
  for (std::size_t k = 0; k < d; ++k) {
    if (!bottom[k].is_zero()) return false;
  }
  return top[0] == Rational(1) || top[0] == Rational(-1);
}

Integer max_abs(const std::vector<Integer>& values) {
  Integer best = 0;
  for (const auto& v : values) {
    if (abs(v) > best) best = abs(v);
  }
  return best;
}

Json integers_to_json(const std::vector<Integer>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.get_str());
  return out;
}

std::vector<Integer> integers_from_json(const Json& j) {
  std::vector<Integer> out;
  for (const auto& v : j) out.emplace_back(v.get<std::string>(), 10);
  return out;
}

std::size_t count_distinct_sigma(const std::vector<const CensusRecord*>& records) {
  std::set<SigmaPair> keys;
  for (const auto* r : records) {
    if (r->moduli.sigma) keys.insert(*r->moduli.sigma);
  }
  return keys.size();
}

std::size_t count_distinct_points(const std::vector<const CensusRecord*>& records) {
  std::set<std::vector<Integer>> points;
  for (const auto* r : records) points.insert(r->moduli.projective_point);
  return points.size();
}

// Reads complete lines; a trailing partial line (interrupted write) is cut
// off the file so that appending resumes on a line boundary.
std::vector<std::string> read_complete_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  if (!std::filesystem::exists(path)) return lines;
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::size_t last_newline = text.rfind('\n');
  const std::size_t keep = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (keep != text.size()) std::filesystem::resize_file(path, keep);
  std::size_t start = 0;
  while (start < keep) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<Rational> CensusConfig::effective_grid() const {
  if (!bound_grid.empty()) return bound_grid;
  std::vector<Rational> grid;
  for (Rational b = 1; b < bound; b *= Rational(2)) grid.push_back(b);
  grid.push_back(bound);
  return grid;
}

std::filesystem::path CensusConfig::summary_path() const {
  return std::filesystem::path(output_path.string() + ".summary.json");
}

std::filesystem::path CensusConfig::report_path() const {
  return std::filesystem::path(output_path.string() + ".report.txt");
}

std::vector<Integer> CensusRecord::bad_primes() const {
  std::vector<Integer> out;
  for (const auto& [p, e] : minimal_resultant.factors()) {
    (void)e;
    out.push_back(p);
  }
  return out;
}

void enumerate_models(const CensusConfig& config, const std::function<bool(const MorphismModel&)>& sink) {
  if (config.coeff_bound < 0) throw InvalidArgument("coefficient bound must be non-negative");
  const auto per_form = MonomialBasis::get(config.n, config.d).size();
  const std::size_t count = per_form * (static_cast<std::size_t>(config.n) + 1);
  const long h = config.coeff_bound;
  if (h == 0) return;
  std::vector<long> digits(count, -h);
  while (true) {
    // Canonical iff the first nonzero entry is positive and the gcd is 1.
    long first = 0;
    long content = 0;
    for (long v : digits) {
      if (first == 0) first = v;
      content = std::gcd(content, v);
    }
    if (first > 0 && content == 1) {
      std::vector<std::vector<Rational>> forms(static_cast<std::size_t>(config.n) + 1);
      for (std::size_t i = 0; i < count; ++i) forms[i / per_form].emplace_back(digits[i]);
      const MorphismModel phi = MorphismModel::from_coefficients(config.n, config.d, forms);
      if (!macaulay_resultant(phi).vanishes() && !sink(phi)) return;
    }
    std::size_t pos = count;
    while (pos > 0 && digits[pos - 1] == h) digits[--pos] = -h;
    if (pos == 0) return;
    ++digits[pos - 1];
  }
}

std::vector<MorphismModel> enumerate_models(const CensusConfig& config) {
  std::vector<MorphismModel> out;
  enumerate_models(config, [&](const MorphismModel& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

bool height_within(const CensusRecord& record, const Rational& bound) {
  return Rational(max_abs(record.moduli.projective_point)) <= bound;
}

bool certified_member(const CensusRecord& record, const Rational& bound) {
  return height_within(record, bound) && Rational(record.norm) <= bound;
}

bool possible_member(const CensusRecord& record, const Rational& bound) {
  if (!height_within(record, bound)) return false;
  if (Rational(record.norm) <= bound) return true;
  return !record.norm_certified && Rational(record.norm_lower_bound) <= bound;
}

CensusRecord make_census_record(const MorphismModel& phi, const CensusConfig& config) {
  const ReductionReport report = reduction_report(phi, config.search);
  CensusRecord record{
      .key = canonical_key(report.morphism),
      .model = report.morphism,
      .res = report.res,
      .local = report.local,
      .minimal_resultant = report.minimal_resultant,
      .norm = report.norm,
      .norm_certified = report.fully_certified,
      .norm_lower_bound = report.norm_lower_bound,
      .moduli = moduli_height(report.morphism),
      .sigma3 = std::nullopt,
      .monic = is_monic_polynomial_map(report.morphism),
  };
  for (auto& l : record.local) l.conjugator.reset();
  if (phi.dimension() == 1 && phi.degree() == 2) {
    record.sigma3 = multiplier_spectrum(report.morphism).elementary_symmetric.at(2);
  }
  record.in_gamma = certified_member(record, config.bound);
  record.possibly_in_gamma = possible_member(record, config.bound);
  return record;
}

Json census_record_to_json(const CensusRecord& record) {
  Json local = Json::array();
  for (const auto& l : record.local) {
    Json entry;
    entry["p"] = l.p.get_str();
    entry["e"] = l.e_model;
    entry["eps"] = l.eps_estimate;
    entry["eps_floor"] = l.eps_floor;
    entry["certified"] = l.certified;
    local.push_back(std::move(entry));
  }
  Json out;
  out["key"] = record.key;
  out["model"] = morphism_to_json(record.model);
  out["res"] = rational_to_json(record.res);
  out["local"] = std::move(local);
  out["minimal_resultant"] = ideal_to_json(record.minimal_resultant);
  out["norm"] = record.norm.get_str();
  out["norm_certified"] = record.norm_certified;
  out["norm_lower_bound"] = record.norm_lower_bound.get_str();
  out["bad_primes"] = integers_to_json(record.bad_primes());
  out["moduli_kind"] = std::string(to_string(record.moduli.kind));
  out["sigma"] = record.moduli.sigma ? Json::array({rational_to_json(record.moduli.sigma->sigma1),
                                                    rational_to_json(record.moduli.sigma->sigma2)})
                                     : Json(nullptr);
  out["sigma3"] = record.sigma3 ? rational_to_json(*record.sigma3) : Json(nullptr);
  out["moduli_height"] = height_to_json(record.moduli.height);
  out["moduli_point"] = integers_to_json(record.moduli.projective_point);
  out["monic"] = record.monic;
  out["in_gamma"] = record.in_gamma;
  out["possibly_in_gamma"] = record.possibly_in_gamma;
  return out;
}

CensusRecord census_record_from_json(const Json& j) {
  try {
    std::vector<LocalExponent> local;
    for (const auto& entry : j.at("local")) {
      LocalExponent l;
      l.p = Integer(entry.at("p").get<std::string>(), 10);
      l.e_model = entry.at("e").get<long>();
      l.eps_estimate = entry.at("eps").get<long>();
      l.eps_floor = entry.at("eps_floor").get<long>();
      l.certified = entry.at("certified").get<bool>();
      local.push_back(std::move(l));
    }
    ModuliPoint moduli;
    moduli.kind = j.at("moduli_kind").get<std::string>() == "sigma_invariants" ? ModuliKind::sigma_invariants
                                                                              : ModuliKind::coefficient_proxy;
    if (!j.at("sigma").is_null()) {
      moduli.sigma = SigmaPair{rational_from_json(j.at("sigma").at(0)), rational_from_json(j.at("sigma").at(1))};
    }
    moduli.projective_point = integers_from_json(j.at("moduli_point"));
    moduli.height = j.at("moduli_height").get<double>();
    CensusRecord record{
        .key = j.at("key").get<std::string>(),
        .model = morphism_from_json(j.at("model")),
        .res = rational_from_json(j.at("res")),
        .local = std::move(local),
        .minimal_resultant = ideal_from_json(j.at("minimal_resultant")),
        .norm = Integer(j.at("norm").get<std::string>(), 10),
        .norm_certified = j.at("norm_certified").get<bool>(),
        .norm_lower_bound = Integer(j.at("norm_lower_bound").get<std::string>(), 10),
        .moduli = std::move(moduli),
        .sigma3 = std::nullopt,
        .monic = j.at("monic").get<bool>(),
        .in_gamma = j.at("in_gamma").get<bool>(),
        .possibly_in_gamma = j.at("possibly_in_gamma").get<bool>(),
    };
    if (!j.at("sigma3").is_null()) record.sigma3 = rational_from_json(j.at("sigma3"));
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed census record: ") + e.what());
  }
}

std::vector<CensusRecord> read_census_records(const std::filesystem::path& path) {
  std::vector<CensusRecord> out;
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open census records " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(census_record_from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(std::string("census record is not valid JSON: ") + e.what());
    }
  }
  return out;
}

CensusSummary summarize_census(const std::vector<CensusRecord>& records, const CensusConfig& config) {
  CensusSummary summary;
  summary.n = config.n;
  summary.d = config.d;
  summary.coeff_bound = config.coeff_bound;
  summary.bound = config.bound;
  summary.records = records.size();
  summary.complete = true;
  const bool quadratic = config.n == 1 && config.d == 2;

  for (const auto& r : records) {
    if (r.monic) {
      ++summary.monic_checked;
      if (!r.minimal_resultant.is_unit() || !r.norm_certified) {
        throw CensusAssertion(r.key, "monic polynomial map without certified unit minimal resultant");
      }
    }
    if (quadratic) {
      if (!r.sigma3 || !r.moduli.sigma) throw CensusAssertion(r.key, "degree-2 record lacks sigma invariants");
      if (*r.sigma3 != r.moduli.sigma->sigma1 - Rational(2)) {
        throw CensusAssertion(r.key, "multiplier relation sigma3 = sigma1 - 2 fails");
      }
      ++summary.sigma_relation_checked;
    }
  }

  const auto grid = config.effective_grid();
  const Rational top = *std::max_element(grid.begin(), grid.end());

  // Bucket every record that could lie in Gamma for the largest bound.
  std::map<std::string, std::pair<std::size_t, std::size_t>> class_of;  // key -> (bucket, member)
  if (quadratic) {
    std::vector<MorphismModel> members;
    std::vector<const CensusRecord*> member_records;
    for (const auto& r : records) {
      if (possible_member(r, top)) {
        members.push_back(r.model);
        member_records.push_back(&r);
      }
    }
    const auto buckets = bucket_twists(members, config.search);
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      for (std::size_t m = 0; m < buckets[b].members.size(); ++m) {
        CensusClass cls;
        cls.class_id = "c" + std::to_string(b) + "." + std::to_string(m);
        cls.key = buckets[b].key;
        for (std::size_t idx : buckets[b].member_inputs[m]) {
          cls.members.push_back(member_records[idx]->key);
          class_of[member_records[idx]->key] = {b, m};
        }
        summary.classes.push_back(std::move(cls));
      }
    }
  }

  for (const auto& bound : grid) {
    CensusRow row;
    row.bound = bound;
    row.s_b = s_b_primes(bound);
    std::vector<const CensusRecord*> certified;
    std::vector<const CensusRecord*> possible;
    std::vector<const CensusRecord*> bounded_height;
    for (const auto& r : records) {
      if (height_within(r, bound)) bounded_height.push_back(&r);
      if (possible_member(r, bound)) possible.push_back(&r);
      if (!certified_member(r, bound)) continue;
      certified.push_back(&r);
      for (const auto& p : r.bad_primes()) {
        if (!std::binary_search(row.s_b.begin(), row.s_b.end(), p)) {
          row.s_b_containment = false;
          throw CensusAssertion(r.key, "bad prime " + p.get_str() + " outside S_B for B = " + bound.to_string());
        }
      }
    }
    row.gamma_certified = certified.size();
    row.gamma_possible = possible.size();
    row.northcott_points = count_distinct_points(bounded_height);
    if (quadratic) {
      auto count_classes = [&](const std::vector<const CensusRecord*>& subset) {
        std::set<std::pair<std::size_t, std::size_t>> ids;
        for (const auto* r : subset) ids.insert(class_of.at(r->key));
        return ClassCount{count_distinct_sigma(subset), ids.size()};
      };
      row.classes_certified = count_classes(certified);
      row.classes_possible = count_classes(possible);
    }
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

Json CensusSummary::to_json() const {
  Json out;
  out["n"] = n;
  out["d"] = d;
  out["H"] = coeff_bound;
  out["B"] = rational_to_json(bound);
  out["height_threshold"] = "moduli_height <= log(B), compared exactly as max|moduli_point| <= B";
  out["membership"] =
      "certified: search upper bound of N(R_phi) <= B; possible: certified, or uncertified with proven lower bound <= B";
  out["records"] = records;
  out["complete"] = complete;
  out["monic_checked"] = monic_checked;
  out["monic_all_unit"] = true;
  out["sigma_relation_checked"] = sigma_relation_checked;
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["B"] = rational_to_json(row.bound);
    r["S_B"] = integers_to_json(row.s_b);
    r["gamma_certified"] = row.gamma_certified;
    r["gamma_possible"] = row.gamma_possible;
    r["northcott_points"] = row.northcott_points;
    auto interval = [](const std::optional<ClassCount>& c) {
      return c ? Json::array({c->lower, c->upper}) : Json(nullptr);
    };
    r["classes_certified"] = interval(row.classes_certified);
    r["classes_possible"] = interval(row.classes_possible);
    r["s_b_containment"] = row.s_b_containment;
    rows_json.push_back(std::move(r));
  }
  out["rows"] = std::move(rows_json);
  Json classes_json = Json::array();
  for (const auto& c : classes) {
    Json cj;
    cj["class_id"] = c.class_id;
    cj["sigma"] = Json::array({rational_to_json(c.key.sigma1), rational_to_json(c.key.sigma2)});
    cj["members"] = c.members;
    classes_json.push_back(std::move(cj));
  }
  out["classes"] = std::move(classes_json);
  return out;
}

std::string CensusSummary::report_table() const { return report_from_summary_json(to_json()); }

std::string report_from_summary_json(const Json& summary) {
  try {
    std::ostringstream os;
    os << "census n=" << summary.at("n").get<int>() << " d=" << summary.at("d").get<int>()
       << " H=" << summary.at("H").get<int>() << " B=" << summary.at("B").get<std::string>()
       << " records=" << summary.at("records").get<std::size_t>() << "\n";
    os << "height threshold: " << summary.at("height_threshold").get<std::string>() << "\n";
    os << "membership: " << summary.at("membership").get<std::string>() << "\n\n";
    char line[256];
    std::snprintf(line, sizeof line, "%8s  %-24s %10s %10s %10s %16s %16s\n", "B", "S_B", "Gamma_cert",
                  "Gamma_poss", "points", "classes_cert", "classes_poss");
    os << line;
    auto interval = [](const Json& j) -> std::string {
      if (j.is_null()) return "-";
      return "[" + std::to_string(j.at(0).get<std::size_t>()) + ", " + std::to_string(j.at(1).get<std::size_t>()) + "]";
    };
    for (const auto& row : summary.at("rows")) {
      std::string primes;
      for (const auto& p : row.at("S_B")) primes += (primes.empty() ? "" : ",") + p.get<std::string>();
      if (primes.empty()) primes = "{}";
      if (primes.size() > 24) primes = primes.substr(0, 21) + "...";
      std::snprintf(line, sizeof line, "%8s  %-24s %10zu %10zu %10zu %16s %16s\n",
                    row.at("B").get<std::string>().c_str(), primes.c_str(), row.at("gamma_certified").get<std::size_t>(),
                    row.at("gamma_possible").get<std::size_t>(), row.at("northcott_points").get<std::size_t>(),
                    interval(row.at("classes_certified")).c_str(), interval(row.at("classes_possible")).c_str());
      os << line;
    }
    return os.str();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed census summary: ") + e.what());
  }
}

CensusSummary run_census(const CensusConfig& config) {
  if (config.coeff_bound < 1) throw InvalidArgument("census needs H >= 1");
  if (config.bound < Rational(1)) throw InvalidArgument("census needs B >= 1");
  if (config.output_path.empty()) throw InvalidArgument("census needs an output path");

  std::set<std::string> done;
  for (const auto& line : read_complete_lines(config.output_path)) {
    try {
      done.insert(Json::parse(line).at("key").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("existing census file has a malformed record: " + std::string(e.what()));
    }
  }

  std::ofstream out(config.output_path, std::ios::binary | std::ios::app);
  if (!out) throw Error("io_error", "cannot open " + config.output_path.string() + " for writing");

  std::size_t written = 0;
  bool interrupted = false;
  std::vector<MorphismModel> batch;
  auto flush = [&]() {
    std::vector<std::string> lines(batch.size());
    const unsigned workers = std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(batch.size())));
    auto work = [&](unsigned worker) {
      for (std::size_t i = worker; i < batch.size(); i += workers) {
        lines[i] = census_record_to_json(make_census_record(batch[i], config)).dump();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& line : lines) {
      if (config.stop_after && written >= *config.stop_after) {
        interrupted = true;
        break;
      }
      out << line << '\n';
      if (!out) throw Error("io_error", "write failed on " + config.output_path.string());
      ++written;
    }
    out.flush();
    batch.clear();
  };

  enumerate_models(config, [&](const MorphismModel& phi) {
    if (done.count(canonical_key(phi)) != 0) return true;
    batch.push_back(phi);
    if (batch.size() >= kBatchSize) flush();
    return !interrupted;
  });
  if (!interrupted && !batch.empty()) flush();
  out.close();

  if (interrupted) {
    CensusSummary partial;
    partial.n = config.n;
    partial.d = config.d;
    partial.coeff_bound = config.coeff_bound;
    partial.bound = config.bound;
    partial.records = done.size() + written;
    partial.written_this_run = written;
    partial.complete = false;
    return partial;
  }

  CensusSummary summary = summarize_census(read_census_records(config.output_path), config);
  summary.written_this_run = written;
  {
    std::ofstream sj(config.summary_path(), std::ios::binary | std::ios::trunc);
    sj << summary.to_json().dump(2) << '\n';
  }
  {
    std::ofstream rt(config.report_path(), std::ios::binary | std::ios::trunc);
    rt << summary.report_table();
  }
  return summary;
}

}  // namespace resdyn
