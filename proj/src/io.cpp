#include "biquad/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "biquad/errors.hpp"

namespace biquad::io {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key))
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  return doc.at(key);
}

std::size_t dimension(const json& doc, const char* key, const char* what) {
  const json& v = require(doc, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(std::string(what) + ": '" + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

std::size_t one_based(const json& entry, const char* key, std::size_t bound) {
  const json& v = require(entry, key, "tensor entry");
  if (!v.is_number_integer()) throw ParseError(std::string("tensor entry: '") + key + "' must be an integer");
  const long long idx = v.get<long long>();
  if (idx < 1 || static_cast<std::size_t>(idx) > bound)
    throw DimensionError(std::string("tensor entry: index ") + key + "=" + std::to_string(idx) +
                         " outside [1, " + std::to_string(bound) + "]");
  return static_cast<std::size_t>(idx - 1);
}

}  // namespace

Rational rational_from_json(const json& value) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ParseError("expected a rational string \"p/q\" or an integer, got " + value.dump());
}

json to_json(const BiquadraticTensor& t) {
  json entries = json::array();
  for (std::size_t i = 0; i < t.m(); ++i)
    for (std::size_t j = 0; j < t.n(); ++j)
      for (std::size_t k = 0; k < t.m(); ++k)
        for (std::size_t l = 0; l < t.n(); ++l) {
          const Rational& v = t(i, j, k, l);
          if (v.is_zero()) continue;
          entries.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"l", l + 1}, {"v", v.str()}});
        }
  return {{"m", t.m()}, {"n", t.n()}, {"entries", std::move(entries)}};
}

json to_json(const SOSCertificate& cert) {
  json terms = json::array();
  for (const SOSTerm& term : cert.terms) {
    json rows = json::array();
    for (std::size_t i = 0; i < cert.m; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < cert.n; ++j) row.push_back(term.form(i, j).str());
      rows.push_back(std::move(row));
    }
    terms.push_back({{"weight", term.weight.str()}, {"W", std::move(rows)}});
  }
  return {{"m", cert.m}, {"n", cert.n}, {"terms", std::move(terms)}};
}

BiquadraticTensor tensor_from_json(const json& doc) {
  const std::size_t m = dimension(doc, "m", "tensor");
  const std::size_t n = dimension(doc, "n", "tensor");
  const json& entries = require(doc, "entries", "tensor");
  if (!entries.is_array()) throw ParseError("tensor: 'entries' must be an array");
  BiquadraticTensor t(m, n);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
  for (const json& e : entries) {
    const std::size_t i = one_based(e, "i", m);
    const std::size_t j = one_based(e, "j", n);
    const std::size_t k = one_based(e, "k", m);
    const std::size_t l = one_based(e, "l", n);
    if (!seen.emplace(i, j, k, l).second)
      throw ParseError("tensor: duplicate entry (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + "," + std::to_string(k + 1) + "," +
                       std::to_string(l + 1) + ")");
    t(i, j, k, l) = rational_from_json(require(e, "v", "tensor entry"));
  }
  return t;
}

SOSCertificate certificate_from_json(const json& doc) {
  SOSCertificate cert;
  cert.m = dimension(doc, "m", "certificate");
  cert.n = dimension(doc, "n", "certificate");
  const json& terms = require(doc, "terms", "certificate");
  if (!terms.is_array()) throw ParseError("certificate: 'terms' must be an array");
  for (const json& term : terms) {
    const Rational weight = rational_from_json(require(term, "weight", "certificate term"));
    const json& rows = require(term, "W", "certificate term");
    if (!rows.is_array() || rows.size() != cert.m)
      throw DimensionError("certificate term: W must have " + std::to_string(cert.m) + " rows");
    std::vector<Rational> w;
    w.reserve(cert.m * cert.n);
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != cert.n)
        throw DimensionError("certificate term: W rows must have " + std::to_string(cert.n) +
                             " entries");
      for (const json& v : row) w.push_back(rational_from_json(v));
    }
    cert.terms.push_back({weight, BilinearForm(cert.m, cert.n, std::move(w))});
  }
  return cert;
}

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t p = 0; p < stop; ++p) {
      if (text[p] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), path);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace biquad::io
