#pragma once

#include <string>

#include "folkit/multipoly.hpp"

namespace folkit {

// Variable count implied by the identifiers in src (at least 2).
int infer_dimension(const std::string& src);

MultiPoly parse_poly(const std::string& src, int n);
FieldElement parse_scalar(const std::string& src);
VectorFieldGerm parse_vector_field(const std::string& src, int n = 2);
OneFormGerm parse_one_form(const std::string& src, int n = 2);
// Polynomial in t over a tower, e.g. minimal polynomials.
UPoly parse_upoly(const std::string& src, const TowerPtr& tower, const std::string& var = "t");

std::string render(const FieldElement& c);
std::string render(const MultiPoly& p, const std::vector<std::string>& names = {});
std::string render(const VectorFieldGerm& X);
std::string render(const OneFormGerm& w);

}  // namespace folkit
