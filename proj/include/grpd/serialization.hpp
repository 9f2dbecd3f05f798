#pragma once

#include "grpd/bibundle.hpp"
#include "grpd/bornology.hpp"
#include "grpd/groupoid.hpp"

#include <json.hpp>

#include <string>

namespace grpd {

using Json = nlohmann::ordered_json;

/// Schema violation with the JSON path of the offending value.
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string p, const std::string& msg)
        : std::runtime_error(msg + " (at " + p + ")"), path(std::move(p)) {}
};

/// Groupoids serialize either as full tables
///   {"format":1, "objects":N, "arrows":[{"id","src","tgt"},...],
///    "compose":[[g,h,gh],...], "inv":[...], "unit":[...]}
/// or as a constructor shorthand {"format":1, "kind":"pair", ...params}.
/// Loading always validates; saving emits the canonical full-table form.
GroupoidHandle load_groupoid(const Json& j);
Json save_groupoid(const FiniteGroupoid& g);

/// {"format":1, "weights":["p/q", ...]}; validated against the groupoid.
HaarSystem load_haar(const Json& j, const FiniteGroupoid& g);
Json save_haar(const HaarSystem& h);

/// Bibundles mirror the groupoid format plus the point set, anchors and
/// sparse action tables; constructor shorthands cover the named examples.
BibundleHandle load_bibundle(const Json& j);
Json save_bibundle(const Bibundle& b);

/// {"format":1, "coeffs":[{"re":"p/q","im":"r/s"}, ...]}.
std::vector<Scalar> load_coeffs(const Json& j, int expected_dim);
Json save_coeffs(const std::vector<Scalar>& v);

/// {"format":1, "dimension":d, "generators":[["p/q",...],...]}.
PolytopalDisk load_disk(const Json& j);
Json save_disk(const PolytopalDisk& d);

/// {"format":1, "limit":[...], "terms":[[...],...]}.
struct RationalSequence {
    std::vector<Rational> limit;
    std::vector<std::vector<Rational>> terms;
};
RationalSequence load_sequence(const Json& j);
Json save_sequence(const RationalSequence& s);

std::vector<Rational> parse_rational_csv(const std::string& line);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a digest of the compact dump; used as the input digest in reports.
std::string json_digest(const Json& j);

}  // namespace grpd
