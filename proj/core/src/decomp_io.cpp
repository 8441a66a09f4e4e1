#include "tsurg/decomp_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tsurg {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "tsurg-decomposition-1";

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<std::size_t> read_sizes(const json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError("field '" + field + "' must be an array of positive integers");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) {
      throw FormatError("field '" + field + "' must be an array of positive integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

}  // namespace

std::string export_decomposition(const Decomposition& d, const std::optional<std::vector<std::size_t>>& cycle_weights) {
  std::ostringstream os;
  os << "{\n  \"format\": \"" << kFormat << "\",\n  \"legs\": [";
  for (std::size_t l = 0; l < d.signature.order(); ++l) {
    const Leg& leg = d.signature.leg(l);
    os << (l ? ", " : "") << "{\"dim\": " << leg.dim;
    if (leg.has_split()) os << ", \"split\": " << list(leg.split);
    os << "}";
  }
  os << "],\n";
  if (cycle_weights) os << "  \"cycle_weights\": " << list(*cycle_weights) << ",\n";
  os << "  \"provenance\": " << json(d.provenance).dump() << ",\n";
  os << "  \"verified\": " << (d.verified ? "true" : "false") << ",\n";
  os << "  \"terms\": [";
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << "[";
    for (std::size_t l = 0; l < d.terms[i].size(); ++l) {
      os << (l ? ", " : "") << "[";
      for (std::size_t x = 0; x < d.terms[i][l].size(); ++x) os << (x ? ", " : "") << '"' << d.terms[i][l][x] << '"';
      os << "]";
    }
    os << "]";
  }
  os << (d.terms.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

DecompFile import_decomposition(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("top level must be an object");
  if (j.contains("format") && j["format"] != kFormat) {
    throw FormatError("field 'format': unsupported value " + j["format"].dump());
  }
  if (!j.contains("legs") || !j["legs"].is_array()) throw FormatError("missing array field 'legs'");
  if (!j.contains("terms") || !j["terms"].is_array()) throw FormatError("missing array field 'terms'");

  std::vector<Leg> legs;
  for (std::size_t l = 0; l < j["legs"].size(); ++l) {
    const json& jl = j["legs"][l];
    const std::string where = "legs[" + std::to_string(l) + "]";
    if (!jl.is_object() || !jl.contains("dim") || !jl["dim"].is_number_unsigned() || jl["dim"].get<std::size_t>() == 0) {
      throw FormatError(where + ": needs a positive integer 'dim'");
    }
    Leg leg{jl["dim"].get<std::size_t>(), {}};
    if (jl.contains("split")) leg.split = read_sizes(jl["split"], where + ".split");
    legs.push_back(std::move(leg));
  }
  DecompFile out;
  try {
    out.decomposition.signature = LegSignature(std::move(legs));
  } catch (const std::exception& e) {
    throw FormatError(std::string("legs: ") + e.what());
  }
  const LegSignature& sig = out.decomposition.signature;
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw FormatError("field 'provenance' must be a string");
    out.decomposition.provenance = j["provenance"].get<std::string>();
  }
  if (j.contains("verified")) {
    if (!j["verified"].is_boolean()) throw FormatError("field 'verified' must be a boolean");
    out.claimed_verified = j["verified"].get<bool>();
  }
  if (j.contains("cycle_weights")) out.cycle_weights = read_sizes(j["cycle_weights"], "cycle_weights");

  const json& terms = j["terms"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "term " + std::to_string(i);
    const json& jt = terms[i];
    if (!jt.is_array() || jt.size() != sig.order()) {
      throw FormatError(where + ": expected " + std::to_string(sig.order()) + " leg vectors");
    }
    Term t;
    for (std::size_t l = 0; l < sig.order(); ++l) {
      const json& jv = jt[l];
      if (!jv.is_array() || jv.size() != sig.dim(l)) {
        throw FormatError(where + ", leg " + std::to_string(l) + ": vector length " +
                          (jv.is_array() ? std::to_string(jv.size()) : std::string("?")) +
                          " differs from leg dimension " + std::to_string(sig.dim(l)));
      }
      Vector v;
      for (std::size_t x = 0; x < jv.size(); ++x) {
        try {
          if (jv[x].is_string()) {
            v.push_back(Rational::parse(jv[x].get<std::string>()));
          } else if (jv[x].is_number_integer()) {
            v.push_back(Rational(jv[x].get<long>()));
          } else {
            throw std::invalid_argument("not a rational");
          }
        } catch (const std::exception&) {
          throw FormatError(where + ", leg " + std::to_string(l) + ", entry " + std::to_string(x) +
                            ": not a rational " + jv[x].dump());
        }
      }
      if (is_zero_vector(v)) throw FormatError(where + ", leg " + std::to_string(l) + ": zero vector");
      t.push_back(std::move(v));
    }
    out.decomposition.terms.push_back(std::move(t));
  }
  out.decomposition.verified = false;
  return out;
}

void write_decomposition_file(const std::string& path, const Decomposition& d,
                              const std::optional<std::vector<std::size_t>>& cycle_weights) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << export_decomposition(d, cycle_weights);
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

DecompFile read_decomposition_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return import_decomposition(ss.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace tsurg
