#pragma once

// Exact identity suites behind `fuzzyqrg verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzyqrg/qrg.hpp"

namespace fuzzyqrg::verify {

struct Check {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("algebra", "calculus", "qlc", "monopole" or "all").
/// Throws std::invalid_argument for an unknown name.
std::vector<Check> run_suite(const std::string& suite);

/// "name: PASS [anchor]".
std::string format(const Check& c);

/// Normal-ordered basis monomials x1^a x2^b x3^c (c <= 1) of total degree <= max_degree.
std::vector<AlgElem> basis_monomials(int max_degree);

/// Symmetric metrics with entries p/q, |p| <= 6, 1 <= q <= 4, and nonzero determinant.
std::vector<Mat3<Rational>> random_rational_metrics(std::size_t count, std::uint64_t seed);

}  // namespace fuzzyqrg::verify
