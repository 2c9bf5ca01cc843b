#include "resdyn/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>

#include "resdyn/errors.hpp"
#include "resdyn/number_theory.hpp"

namespace resdyn {
namespace {

std::string join_exponents(const MultiIndex& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(exps[i]);
  }
  return out;
}

MultiIndex parse_exponents(const std::string& text, int n) {
  MultiIndex out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos || piece.size() > 6) {
      throw SchemaError("malformed monomial exponent string '" + text + "'");
    }
    out.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != static_cast<std::size_t>(n) + 1) {
    throw SchemaError("monomial '" + text + "' needs " + std::to_string(n + 1) + " exponents");
  }
  return out;
}

int required_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Json rational_to_json(const Rational& x) { return x.to_string(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw SchemaError("rational values must be strings like \"a/b\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

Json ideal_to_json(const FactoredIdeal& ideal) {
  Json out = Json::object();
  for (const auto& [p, e] : ideal.factors()) out[p.get_str()] = e;
  return out;
}

FactoredIdeal ideal_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("factored ideal must be an object");
  std::map<Integer, int> factors;
  for (const auto& [key, value] : j.items()) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
      throw SchemaError("ideal key '" + key + "' is not a decimal prime");
    }
    if (!value.is_number_integer() || value.get<int>() < 1) throw SchemaError("ideal exponents must be integers >= 1");
    factors[Integer(key, 10)] = value.get<int>();
  }
  try {
    return FactoredIdeal::from_factors(factors);
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

Json morphism_to_json(const MorphismModel& phi) {
  Json forms = Json::array();
  for (const auto& form : phi.forms()) {
    Json terms = Json::array();
    for (std::size_t i = 0; i < form.coefficients().size(); ++i) {
      if (form[i].is_zero()) continue;
      terms.push_back(Json::array({join_exponents(form.basis()[i]), rational_to_json(form[i])}));
    }
    forms.push_back(std::move(terms));
  }
  Json out;
  out["n"] = phi.dimension();
  out["d"] = phi.degree();
  out["forms"] = std::move(forms);
  return out;
}

MorphismModel morphism_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("morphism must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "n" && key != "d" && key != "forms") throw SchemaError("unexpected morphism field '" + key + "'");
  }
  const int n = required_int(j, "n");
  const int d = required_int(j, "d");
  if (n < 1 || n > 8) throw SchemaError("n must be in [1, 8]");
  if (d < 1 || d > 32) throw SchemaError("d must be in [1, 32]");
  if (!j.contains("forms") || !j.at("forms").is_array()) throw SchemaError("missing array field 'forms'");
  const auto& forms = j.at("forms");
  if (forms.size() != static_cast<std::size_t>(n) + 1) {
    throw SchemaError("'forms' needs exactly n+1 = " + std::to_string(n + 1) + " entries");
  }
  std::vector<HomogeneousForm> out;
  for (const auto& terms : forms) {
    if (!terms.is_array()) throw SchemaError("each form must be an array of [monomial, coefficient] pairs");
    HomogeneousForm form(n, d);
    std::set<std::size_t> seen;
    for (const auto& term : terms) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_string()) {
        throw SchemaError("each term must be [\"i0,...,in\", \"a/b\"]");
      }
      const MultiIndex exps = parse_exponents(term[0].get<std::string>(), n);
      std::size_t index = 0;
      try {
        index = form.basis().index_of(exps);
      } catch (const InvalidArgument& e) {
        throw SchemaError(std::string("monomial '") + term[0].get<std::string>() + "': " + e.what());
      }
      if (!seen.insert(index).second) throw SchemaError("duplicate monomial '" + term[0].get<std::string>() + "'");
      form[index] = rational_from_json(term[1]);
    }
    out.push_back(std::move(form));
  }
  try {
    return MorphismModel(std::move(out));
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

Json linear_map_to_json(const LinearMap& f) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.matrix().cols(); ++c) row.push_back(rational_to_json(f.matrix()(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

LinearMap linear_map_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("matrix must be an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw SchemaError("matrix rows must be arrays");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    rows.push_back(std::move(r));
  }
  try {
    return LinearMap::from_rows(rows);
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

Json height_to_json(double height) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", height);
  return std::strtod(buffer, nullptr);
}

Json resultant_to_json(const ResultantValue& res) {
  Json out;
  out["res"] = rational_to_json(res.value);
  out["method"] = std::string(to_string(res.method));
  out["vanishes"] = res.vanishes();
  return out;
}

Json reduction_report_to_json(const ReductionReport& report) {
  Json local = Json::array();
  for (const auto& l : report.local) {
    Json entry;
    entry["p"] = l.p.get_str();
    entry["e"] = l.e_model;
    entry["eps"] = l.eps_estimate;
    entry["certified"] = l.certified;
    local.push_back(std::move(entry));
  }
  Json out;
  out["res"] = rational_to_json(report.res);
  out["local"] = std::move(local);
  out["minimal_resultant"] = ideal_to_json(report.minimal_resultant);
  out["norm"] = report.norm.get_str();
  out["fully_certified"] = report.fully_certified;
  return out;
}

Json moduli_point_to_json(const ModuliPoint& point) {
  Json out;
  out["sigma1"] = point.sigma ? rational_to_json(point.sigma->sigma1) : Json(nullptr);
  out["sigma2"] = point.sigma ? rational_to_json(point.sigma->sigma2) : Json(nullptr);
  out["moduli_height"] = height_to_json(point.height);
  out["kind"] = std::string(to_string(point.kind));
  Json coords = Json::array();
  for (const auto& c : point.projective_point) coords.push_back(c.get_str());
  out["moduli_point"] = std::move(coords);
  out["model_dependent"] = point.model_dependent();
  return out;
}

Json verdict_to_json(const ConjugacyVerdict& verdict) {
  Json out;
  out["status"] = std::string(to_string(verdict.status));
  out["witness"] = verdict.witness ? linear_map_to_json(*verdict.witness) : Json(nullptr);
  if (!verdict.separating_invariant.empty()) out["separating_invariant"] = verdict.separating_invariant;
  return out;
}

Json payload_schemas() {
  static const char* const kSchemas = R"json(
{
  "morphism": {
    "type": "object",
    "required": [
      "n",
      "d",
      "forms"
    ],
    "additionalProperties": false,
    "properties": {
      "n": {
        "type": "integer",
        "minimum": 1,
        "maximum": 8
      },
      "d": {
        "type": "integer",
        "minimum": 1,
        "maximum": 32
      },
      "forms": {
        "type": "array",
        "description": "n+1 forms; terms in lexicographic monomial order, X0^d first",
        "items": {
          "type": "array",
          "items": {
            "type": "array",
            "prefixItems": [
              {
                "type": "string",
                "pattern": "^[0-9]+(,[0-9]+)*$"
              },
              {
                "type": "string",
                "pattern": "^-?[0-9]+(/[0-9]+)?$"
              }
            ],
            "minItems": 2,
            "maxItems": 2
          }
        }
      }
    }
  },
  "resultant": {
    "type": "object",
    "required": [
      "res",
      "method",
      "vanishes"
    ],
    "properties": {
      "res": {
        "type": "string",
        "pattern": "^-?[0-9]+(/[0-9]+)?$"
      },
      "method": {
        "enum": [
          "sylvester",
          "macaulay_quotient",
          "perturbation"
        ]
      },
      "vanishes": {
        "type": "boolean"
      }
    }
  },
  "reduce": {
    "type": "object",
    "required": [
      "res",
      "local",
      "minimal_resultant",
      "norm",
      "fully_certified"
    ],
    "properties": {
      "res": {
        "type": "string",
        "pattern": "^-?[0-9]+(/[0-9]+)?$"
      },
      "local": {
        "type": "array",
        "items": {
          "type": "object",
          "properties": {
            "p": {
              "type": "string"
            },
            "e": {
              "type": "integer"
            },
            "eps": {
              "type": "integer"
            },
            "certified": {
              "type": "boolean"
            }
          }
        }
      },
      "minimal_resultant": {
        "type": "object",
        "additionalProperties": {
          "type": "integer",
          "minimum": 1
        }
      },
      "norm": {
        "type": "string"
      },
      "fully_certified": {
        "type": "boolean"
      }
    }
  },
  "invariants": {
    "type": "object",
    "required": [
      "moduli_height",
      "kind",
      "moduli_point",
      "model_dependent"
    ],
    "properties": {
      "sigma1": {
        "type": [
          "string",
          "null"
        ]
      },
      "sigma2": {
        "type": [
          "string",
          "null"
        ]
      },
      "moduli_height": {
        "type": "number"
      },
      "kind": {
        "enum": [
          "sigma_invariants",
          "coefficient_proxy"
        ]
      },
      "moduli_point": {
        "type": "array",
        "items": {
          "type": "string"
        }
      },
      "model_dependent": {
        "type": "boolean"
      }
    }
  },
  "twist-test": {
    "type": "object",
    "required": [
      "status",
      "witness"
    ],
    "properties": {
      "status": {
        "enum": [
          "conjugate",
          "not_conjugate",
          "unknown"
        ]
      },
      "witness": {
        "type": [
          "array",
          "null"
        ],
        "items": {
          "type": "array",
          "items": {
            "type": "string",
            "pattern": "^-?[0-9]+(/[0-9]+)?$"
          }
        }
      },
      "separating_invariant": {
        "type": "string"
      }
    }
  },
  "error": {
    "type": "object",
    "required": [
      "error"
    ],
    "properties": {
      "error": {
        "type": "object",
        "required": [
          "code",
          "message"
        ],
        "properties": {
          "code": {
            "type": "string"
          },
          "message": {
            "type": "string"
          }
        }
      }
    }
  }
}
)json";
  return Json::parse(kSchemas);
}

}  // namespace resdyn
