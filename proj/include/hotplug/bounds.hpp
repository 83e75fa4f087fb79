#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hotplug/model.hpp"

namespace hotplug::bounds {

// R ≥ intercept + slope·M
struct Line {
  Rational intercept;
  Rational slope;
  Rational at(const Rational& m) const { return intercept + slope * m; }
};

inline constexpr std::size_t alpha_steps = 64;

std::vector<Line> cutset_lines(std::size_t k_active, std::size_t n_files);
// α on the grid {0, 1/alpha_steps, …, 1}.
std::vector<Line> yma_lines(std::size_t k_active, std::size_t n_files, std::size_t steps = alpha_steps);
// Exact optimum for K′ = 2; empty for other K′.
std::vector<Line> exact_small_lines(std::size_t k_active, std::size_t n_files);
std::vector<Line> privacy_lines(std::size_t k_active, std::size_t n_files);

// max(0, max over lines)
Rational max_lines(const std::vector<Line>& lines, const Rational& m);

Rational cutset_lb(const SystemParams& p, const Rational& m);
Rational yma_lb(const SystemParams& p, const Rational& m);
Rational exact_small_lb(const SystemParams& p, const Rational& m);
Rational privacy_lb(const SystemParams& p, const Rational& m);
// Pointwise max of the privacy bound and the non-private ones.
Rational combined_private_lb(const SystemParams& p, const Rational& m);

// (1−μ)/μ·(1 − (1−μ)^r) with μ = M/N; r at M = 0.
Rational decentralized(std::size_t r, std::size_t n_files, const Rational& m);

// Lower convex envelope, sorted by M; the input may be unsorted.
std::vector<TradeoffPoint> lower_envelope(std::vector<TradeoffPoint> points);
// Linear interpolation on an envelope; nullopt outside its M range.
std::optional<Rational> evaluate(const std::vector<TradeoffPoint>& envelope, const Rational& m);

// Corner points from closed forms, with the trivial endpoints each scheme
// admits. Curve names: yma_plus, ht1, ht2, ht3, flex, ht, pk_plus,
// ht1_pk, ht3_pk, ht_pk, ht_vu, ht1_vu, ht3_vu, ht_and_vu, yma_vu.
std::vector<TradeoffPoint> corner_points(const std::string& curve, const SystemParams& p);
TradeoffCurve achievable_curve(const std::string& curve, const SystemParams& p);
const std::vector<std::string>& curve_names();

// Sampled curves: decen_plus, decen_vu and the converses cutset, yma_lb,
// exact_small, privacy_lb, combined_private.
const std::vector<std::string>& sampled_names();
Rational sampled_value(const std::string& name, const SystemParams& p, const Rational& m);

// All corner abscissae of `curves` plus N·i/steps, deduplicated, sorted.
std::vector<Rational> memory_grid(const SystemParams& p, const std::vector<TradeoffCurve>& curves,
                                  std::size_t steps = 128);

struct GapReport {
  Rational max_ratio;  // 1 when nothing was compared
  Rational argmax_m;
  std::size_t compared = 0;
  // Grid points where the achievable value falls below the converse or the
  // converse vanishes while the achievable value does not.
  std::vector<Rational> violations;
};

using Curve = std::function<std::optional<Rational>(const Rational&)>;
GapReport gap_report(const Curve& achievable, const Curve& converse, const std::vector<Rational>& grid);

}  // namespace hotplug::bounds
