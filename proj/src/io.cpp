#include "rectlab/io.hpp"

#include <fstream>
#include <sstream>

#include <boost/beast/core/detail/base64.hpp>

#include "rectlab/error.hpp"

namespace rectlab::io {

namespace b64 = boost::beast::detail::base64;

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

template <typename T>
T get(const Json& doc, const char* key) {
  try {
    return field(doc, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::uint32_t> exponents(const Json& row, std::size_t dim) {
  if (!row.is_array() || row.size() != dim) {
    throw SchemaError("rectangle " + row.dump() + " does not have " + std::to_string(dim) + " exponents");
  }
  std::vector<std::uint32_t> out;
  for (const auto& v : row) {
    if (!v.is_number_unsigned()) throw SchemaError("exponent " + v.dump() + " is not a natural number");
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  // The decoder stops at the first character outside the alphabet, so only
  // '=' padding may remain unread.
  if (text.size() % 4 != 0) throw SchemaError("invalid base64 data");
  std::vector<std::uint8_t> out(b64::decoded_size(text.size()));
  const auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  const auto padding = text.size() - read;
  if (padding > 2 || text.find_first_not_of('=', read) != std::string::npos) throw SchemaError("invalid base64 data");
  out.resize(written);
  return out;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) throw SchemaError("bad rational '" + text + "'");
  q.canonicalize();
  return q;
}

Json to_json(const RectangleFamily& family) {
  Json rects = Json::array();
  for (const auto& r : family) rects.push_back(Json(r.exponents()));
  Json doc = {{"dim", family.dim()}, {"rects", rects}};
  if (!family.label().empty()) doc["label"] = family.label();
  return doc;
}

RectangleFamily family_from_json(const Json& doc, const Limits& limits) {
  const auto dim = get<std::size_t>(doc, "dim");
  if (dim == 0) throw SchemaError("family dimension must be positive");
  const auto& rects = field(doc, "rects");
  if (!rects.is_array()) throw SchemaError("'rects' must be an array");
  RectangleFamily family(dim, doc.value("label", std::string{}));
  for (const auto& row : rects) family.insert(DyadicRectangle(exponents(row, dim), limits.max_exponent));
  return family;
}

Json to_json(const StrictChain& chain) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < chain.size(); ++j) rows.push_back(Json(chain[j].exponents()));
  return {{"dim", chain.dim()}, {"chain", rows}};
}

StrictChain chain_from_json(const Json& doc, const Limits& limits) {
  const auto dim = get<std::size_t>(doc, "dim");
  if (dim == 0) throw SchemaError("chain dimension must be positive");
  const auto& rows = field(doc, "chain");
  if (!rows.is_array()) throw SchemaError("'chain' must be an array");
  std::vector<DyadicRectangle> rects;
  for (const auto& row : rows) rects.emplace_back(exponents(row, dim), limits.max_exponent);
  return StrictChain(std::move(rects));
}

Json to_json(const GridSpec& spec) { return {{"q", spec.resolutions()}, {"period", spec.periods()}}; }

GridSpec spec_from_json(const Json& doc, const Limits& limits) {
  auto q = get<std::vector<std::uint32_t>>(doc, "q");
  std::vector<std::uint32_t> period;
  if (doc.contains("period")) period = get<std::vector<std::uint32_t>>(doc, "period");
  return GridSpec(std::move(q), std::move(period), limits.max_cells);
}

Json to_json(const GridFunction& f) {
  Json doc = {{"q", f.spec().resolutions()}};
  if (!f.spec().is_unit_torus()) doc["period"] = f.spec().periods();
  Json values = Json::array();
  for (std::size_t c = 0; c < f.size(); ++c) values.push_back(f.value(c).to_string());
  doc["values"] = std::move(values);
  return doc;
}

GridFunction gridfn_from_json(const Json& doc, const Limits& limits) {
  const auto spec = spec_from_json(doc, limits);
  const auto& values = field(doc, "values");
  if (!values.is_array() || values.size() != spec.cell_count()) {
    throw SchemaError("'values' must list " + std::to_string(spec.cell_count()) + " cells");
  }
  std::vector<DyadicRational> parsed;
  parsed.reserve(values.size());
  for (const auto& v : values) {
    if (v.is_number_integer()) {
      parsed.emplace_back(v.get<long>());
    } else if (v.is_string()) {
      try {
        parsed.push_back(DyadicRational::parse(v.get<std::string>()));
      } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
      }
    } else {
      throw SchemaError("cell value " + v.dump() + " is neither a string nor an integer");
    }
  }
  return GridFunction::from_values(spec, parsed);
}

Json to_json(const GridSet& set) {
  Json doc = to_json(set.spec());
  doc["bits"] = base64_encode(set.to_bytes());
  return doc;
}

GridSet gridset_from_json(const Json& doc, const Limits& limits) {
  const auto spec = spec_from_json(doc, limits);
  const auto bytes = base64_decode(get<std::string>(doc, "bits"));
  return GridSet::from_bytes(spec, bytes);
}

Json to_json(const BundleMeasurements& m) {
  Json doc = {{"theta_measure", m.theta_measure.to_string()},
              {"y_measure", m.y_measure.to_string()},
              {"min_maximal", m.min_maximal.to_string()},
              {"min_cell", m.min_cell},
              {"theta_in_y", m.theta_in_y},
              {"c", m.c ? Json(rational_string(*m.c)) : Json(nullptr)},
              {"c_prime", m.c_prime.to_string()}};
  return doc;
}

Json to_json(const CounterexampleBundle& b) {
  Json params = {{"n", b.n}, {"k", b.k}, {"d", b.d}};
  if (b.p) params["p"] = *b.p;
  return {{"construction", b.construction},
          {"convention", b.convention},
          {"params", params},
          {"family", to_json(b.family)},
          {"grid", to_json(b.spec)},
          {"theta", base64_encode(b.theta.to_bytes())},
          {"y", base64_encode(b.y.to_bytes())},
          {"claimed", {{"c", rational_string(b.claimed_c)}, {"c_prime", rational_string(b.claimed_c_prime)}}},
          {"measured", to_json(b.measured)}};
}

CounterexampleBundle bundle_from_json(const Json& doc, const Limits& limits) {
  CounterexampleBundle b;
  b.construction = get<std::string>(doc, "construction");
  b.convention = doc.value("convention", std::string{});
  const auto& params = field(doc, "params");
  b.n = get<std::uint32_t>(params, "n");
  b.k = get<std::uint32_t>(params, "k");
  b.d = get<std::uint32_t>(params, "d");
  if (params.contains("p")) b.p = get<std::uint32_t>(params, "p");
  b.family = family_from_json(field(doc, "family"), limits);
  b.spec = spec_from_json(field(doc, "grid"), limits);
  if (b.spec.dim() != b.family.dim()) throw SchemaError("grid and family dimensions differ");
  b.theta = GridSet::from_bytes(b.spec, base64_decode(get<std::string>(doc, "theta")));
  b.y = GridSet::from_bytes(b.spec, base64_decode(get<std::string>(doc, "y")));
  const auto& claimed = field(doc, "claimed");
  b.claimed_c = parse_rational(get<std::string>(claimed, "c"));
  b.claimed_c_prime = parse_rational(get<std::string>(claimed, "c_prime"));
  const auto& m = field(doc, "measured");
  b.measured.theta_measure = DyadicRational::parse(get<std::string>(m, "theta_measure"));
  b.measured.y_measure = DyadicRational::parse(get<std::string>(m, "y_measure"));
  b.measured.min_maximal = DyadicRational::parse(get<std::string>(m, "min_maximal"));
  b.measured.min_cell = get<std::size_t>(m, "min_cell");
  b.measured.theta_in_y = get<bool>(m, "theta_in_y");
  if (!field(m, "c").is_null()) b.measured.c = parse_rational(get<std::string>(m, "c"));
  b.measured.c_prime = DyadicRational::parse(get<std::string>(m, "c_prime"));
  return b;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rectlab::io
