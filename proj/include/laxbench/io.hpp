#pragma once

#include <string>

#include <json.hpp>

#include "laxbench/gauge.hpp"
#include "laxbench/interp.hpp"
#include "laxbench/lax.hpp"
#include "laxbench/poisson.hpp"

namespace laxbench {

using Json = nlohmann::ordered_json;

/// Rationals travel as strings ("p/q"); integers and decimal literals are
/// accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const Complex& z);

Json to_json(const DegreeProfile& p);
DegreeProfile profile_from_json(const Json& j);

/// {"profile": {...}, "entries": [[[c0, c1, ...], ...], ...]}
Json to_json(const PolyMat<Rational>& a);
PolyMat<Rational> polymat_from_json(const Json& j);

Json to_json(const Mat<Rational>& m);
Json to_json(const Phi& phi);
Json to_json(const LinearForm& lf, const CoordSet& cs);
Json to_json(const std::vector<Rational>& v);

std::string coord_name(const CoordIndex& c);

/// Nonzero entries with a < b, in coordinate order.
Json to_json(const BracketTable& t);

Json to_json(const NormalForm<Rational>& nf);

/// Per-step H table; complex values are written as [re, im].
Json to_json(const Trajectory& tr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace laxbench
