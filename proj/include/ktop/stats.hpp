#pragma once

#include <span>
#include <vector>

namespace ktop {

double mean(std::span<const double> xs);

/// Population standard deviation (divides by N).
double stddev(std::span<const double> xs);

/// Least-squares slope of y against x.
double linear_slope(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation; ties get average ranks.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace ktop
