#pragma once

// JSON records for correction series and summation results.
//
// Exact series are a bare array of "n/d" strings. Float series are an object
// {"mode": "float", "precision": D, "corrections": [...]} whose strings carry
// enough digits to round-trip at precision D.

#include <string>
#include <vector>

#include "json.hpp"

#include "mfpt/model.hpp"
#include "mfpt/resum.hpp"
#include "mfpt/scalar.hpp"
#include "mfpt/series.hpp"

namespace mfpt {

using json = nlohmann::ordered_json;

inline json series_to_json(const correction_series<rational>& s) {
  json out = json::array();
  for (const auto& e : s.corrections) out.push_back(to_string(e));
  return out;
}

inline json series_to_json(const correction_series<real>& s) {
  json values = json::array();
  for (const auto& e : s.corrections) values.push_back(to_string(e));
  json out;
  out["mode"] = "float";
  out["precision"] = working_digits();
  out["corrections"] = std::move(values);
  return out;
}

/// Which representation a parsed series used.
struct parsed_series {
  arithmetic_mode mode = arithmetic_mode::exact_rational;
  std::vector<rational> exact;   ///< filled in exact mode
  std::vector<real> floating;    ///< always filled, at working precision
  unsigned precision = 0;        ///< float mode: the declared D
};

inline parsed_series parse_series_json(const json& doc) {
  parsed_series out;
  auto bad = [](const std::string& what) { return parse_error("series JSON: " + what); };
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("mode") || doc["mode"] != "float") throw bad("object form needs \"mode\": \"float\"");
    if (!doc.contains("corrections") || !doc["corrections"].is_array()) throw bad("missing corrections array");
    out.mode = arithmetic_mode::extended_precision;
    out.precision = doc.value("precision", 0u);
    list = &doc["corrections"];
  } else if (!doc.is_array()) {
    throw bad("expected an array or an object");
  }
  if (list->empty()) throw bad("no corrections");
  for (const auto& item : *list) {
    if (!item.is_string()) throw bad("corrections must be strings");
    const auto text = item.get<std::string>();
    if (out.mode == arithmetic_mode::exact_rational) {
      out.exact.push_back(parse_rational(text));
      out.floating.push_back(to_real(out.exact.back()));
    } else {
      try {
        out.floating.emplace_back(text);
      } catch (const std::exception&) {
        throw bad("not a decimal number: '" + text + "'");
      }
    }
  }
  return out;
}

inline parsed_series parse_series_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("series JSON: ") + e.what());
  }
  return parse_series_json(doc);
}

/// A correction_series carrying only the corrections, ready for resum.
template <class T>
correction_series<T> series_from_parsed(const parsed_series& p) {
  correction_series<T> s;
  if constexpr (is_exact_v<T>) {
    if (p.mode != arithmetic_mode::exact_rational) throw domain_error("float series cannot be read in exact mode");
    s.corrections = p.exact;
  } else {
    s.corrections = p.floating;
  }
  s.mode = mode_of_v<T>;
  return s;
}

template <class T>
json summation_to_json(const summation_result& r, const oscillator_spec<T>& spec, int digits = 12) {
  json out;
  auto number = [&](const std::optional<real>& x) -> json {
    if (!x) return nullptr;
    return to_string(*x, digits);
  };
  out["method"] = to_string(r.method);
  if constexpr (is_exact_v<T>) {
    out["g"] = to_string(spec.g);
    out["xi"] = to_string(spec.xi());
  } else {
    out["g"] = to_string(spec.g, digits);
    out["xi"] = to_string(spec.xi(), digits);
  }
  out["kind"] = to_string(spec.kind);
  out["gamma"] = number(r.gamma);
  out["r_c"] = number(r.r_c);
  out["p_exp"] = number(r.p_exp);
  out["N"] = r.order;
  out["delta_E"] = to_string(r.delta_E, digits);
  out["E_tot"] = to_string(r.E_tot, digits);
  out["converged"] = r.converged;
  out["error_estimate"] = to_string(r.error_estimate, 3);
  return out;
}

}  // namespace mfpt
