#include "gtcorr/metric.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Metric Metric::quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("quantile level must lie in (0, 1), got " + std::to_string(q));
  }
  return Metric(Kind::kQuantile, q);
}

Metric Metric::parse(std::string_view text) {
  if (text == "mean") return mean();
  if (text == "median") return median();
  if (text == "tail" || text == "tail95") return tail95();
  double value = 0.0;
  if (text.size() > 1 && text.front() == 'p' && parse_double(text.substr(1), value)) {
    return quantile(value / 100.0);
  }
  if (text.size() > 1 && text.front() == 'q' && parse_double(text.substr(1), value)) {
    return quantile(value);
  }
  throw ParseError("unknown metric '" + std::string(text) +
                   "' (expected mean, median, tail95, pNN or qX)");
}

std::string Metric::label() const {
  if (is_mean()) return "mean";
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%.10g", q_ * 100.0);
  return buf;
}

double rayleigh_gamma(const Metric& metric) {
  if (metric.is_mean()) return std::sqrt(0.5 * std::numbers::pi);
  return std::sqrt(-2.0 * std::log1p(-metric.q()));
}

}  // namespace gtcorr
