#pragma once

#include <string>
#include <string_view>

namespace basinseg {

/// Which side of the size/saliency trade-off a threshold function maps.
///   omega: saliency -> minimal cluster size, Λ holds when ω(d) <= min size
///   tau:   cluster size -> maximal saliency, Λ holds when d >= τ(min size)
enum class ThresholdKind { tau, omega };

enum class ThresholdForm { constant, linear, square };

/// A non-increasing threshold function.
///
/// For kind omega the forms are ω(w) = s0, s0·(1−w) and s0·(1−w)². For kind
/// tau, `constant` is the size-independent threshold τ(s) = s0, while
/// `linear` and `square` are the τ counterparts of the ω forms with the same
/// s0, τ(s) = 1 − s/s0 and τ(s) = 1 − sqrt(s/s0), so both kinds of a given
/// (form, s0) accept the same merges up to rounding at the boundary.
/// All values are clamped at 0.
struct ThresholdFn {
  ThresholdKind kind = ThresholdKind::omega;
  ThresholdForm form = ThresholdForm::constant;
  double s0 = 0.0;

  /// Parses `const:<s0>`, `linear:<s0>` or `square:<s0>`.
  static ThresholdFn parse(std::string_view spec, ThresholdKind kind = ThresholdKind::omega);
  std::string to_string() const;

  /// Throws InputError on a negative or non-finite s0, or on s0 = 0 for the
  /// tau linear/square forms.
  void validate() const;

  friend bool operator==(const ThresholdFn&, const ThresholdFn&) = default;
};

/// ω(x) for a saliency x in [0,1], or τ(x) for a size x >= 0.
/// Throws InputError when x is outside that domain.
double eval_threshold(const ThresholdFn& tf, double x);

/// True when Λ fails for two clusters joined at saliency `d`, i.e. they merge.
bool merges(const ThresholdFn& tf, double d, double min_size);

ThresholdKind parse_threshold_kind(std::string_view text);

}  // namespace basinseg
