#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rectlab/constructions.hpp"
#include "rectlab/grid.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab::io {

using Json = nlohmann::ordered_json;

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// "p/q", or "p" for integers.
std::string rational_string(const Rational& q);
Rational parse_rational(const std::string& text);

// { "dim": n, "rects": [[m_1, ..., m_n], ...] }
Json to_json(const RectangleFamily& family);
RectangleFamily family_from_json(const Json& doc, const Limits& limits = {});

// { "dim": n, "chain": [[...], ...] }, strict nesting checked on load.
Json to_json(const StrictChain& chain);
StrictChain chain_from_json(const Json& doc, const Limits& limits = {});

// { "q": [...], "period": [...] }; period is optional on input.
Json to_json(const GridSpec& spec);
GridSpec spec_from_json(const Json& doc, const Limits& limits = {});

// { "q": [...], "values": ["num/2^e", ...] } plus "period" off the unit torus.
Json to_json(const GridFunction& f);
GridFunction gridfn_from_json(const Json& doc, const Limits& limits = {});

// { "q": [...], "period": [...], "bits": base64 }
Json to_json(const GridSet& set);
GridSet gridset_from_json(const Json& doc, const Limits& limits = {});

/// Family, grid, Theta and Y, parameters, claimed and measured constants.
/// The per-index parts Y_J and E_P are not stored.
Json to_json(const CounterexampleBundle& bundle);
CounterexampleBundle bundle_from_json(const Json& doc, const Limits& limits = {});

Json to_json(const BundleMeasurements& m);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace rectlab::io
