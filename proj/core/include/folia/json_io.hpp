#pragma once

// JSON encodings. Exact quantities are written as "p/q" strings, keys come
// out in a fixed order, and readers reject unknown keys.

#include <string>
#include <vector>

#include "folia/aiet.hpp"
#include "folia/attractor.hpp"
#include "folia/conjugacy.hpp"
#include "folia/rauzy.hpp"
#include "folia/surface.hpp"
#include "folia/sweep.hpp"
#include "folia/trace.hpp"
#include "json.hpp"

namespace folia::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j, const std::string& where);

Json to_json(const geom::Point2& p);
geom::Point2 point_from_json(const Json& j, const std::string& where);

// {"ambient": [lo, hi], "pieces": [{"lo","hi","slope","offset"}...]}, plus
// "undefined" listing the gaps in the domain when there are any.
Json to_json(const iet::PartialAiet& m);
Json to_json(const iet::Aiet& m);
iet::PartialAiet partial_from_json(const Json& j);
iet::Aiet aiet_from_json(const Json& j);

Json to_json(const geom::Surface& s);
geom::Surface surface_from_json(const Json& j);

Json to_json(const geom::ValidationReport& r);
Json to_json(const iet::BijectivityCertificate& c);
Json to_json(const iet::Cycle& c);
Json to_json(const geom::LeafTrace& t);
Json to_json(const geom::TransversalReturn& r);
Json to_json(const rv::TwoBranchMap& m);
Json to_json(const rv::ClassificationReport& r);
// Timing is left out so that the output only depends on the inputs.
Json to_json(const rv::SweepResult& r);
Json to_json(const attractor::CantorApprox& a);
Json to_json(const attractor::AttractionReport& r);
Json to_json(const attractor::BoxCounting& b);
Json to_json(const conj::ConjugacyApprox& a, bool include_tables);
Json to_json(const conj::DisplacementReport& r);
Json to_json(const conj::ExtractedIet& e);

// Throws Error(Io) or Error(Parse).
Json read_file(const std::string& path);
// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const std::string& text);

}  // namespace folia::io
