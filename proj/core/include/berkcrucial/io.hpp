#pragma once

#include <string>

#include "berkcrucial/equidist.hpp"

namespace berk {

/// Parse a rational map from a polynomial or quotient expression in z, with
/// integer, rational, and p-literal coefficients, e.g. "z^2+1/p" or
/// "(z^2+1)/(p*z)".  The prime substitutes for "p".
RationalMapRep parse_map(const std::string& expr, long p, int e = 1);

/// Round-trip a map through its map-v1 JSON document.
RationalMapRep parse_map_json(const std::string& text);

/// Parse "center;t" into a type II point (center a rational expression in p,
/// t a rational).
BerkPoint parse_point(const std::string& s, const TowerContext& ctx);

std::string rational_json(const QQ& q);

std::string point_json(const BerkPoint& P);
std::string map_json(const RationalMapRep& f);
std::string tree_json(const FiniteTree& T);
std::string tree_dot(const FiniteTree& T,
                     const std::vector<std::pair<BerkPoint, long>>* weights
                     = nullptr);
std::string crucial_report_json(const CrucialReport& r);
std::string degrees_json(const DegreeData& dd);
std::string equidist_json(const std::vector<EquidistRecord>& recs);
std::string equidist_csv(const std::vector<EquidistRecord>& recs);
std::string profile_csv(const SegmentPLF& s);

}  // namespace berk
