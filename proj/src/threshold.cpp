#include "basinseg/threshold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "basinseg/graph.hpp"

namespace basinseg {

ThresholdFn ThresholdFn::parse(std::string_view spec, ThresholdKind kind) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("threshold function `" + std::string(spec) + "` is not <form>:<s0>");
  }
  const std::string_view name = spec.substr(0, colon);
  const std::string_view value = spec.substr(colon + 1);

  ThresholdFn tf;
  tf.kind = kind;
  if (name == "const") {
    tf.form = ThresholdForm::constant;
  } else if (name == "linear") {
    tf.form = ThresholdForm::linear;
  } else if (name == "square") {
    tf.form = ThresholdForm::square;
  } else {
    throw InputError("unknown threshold form `" + std::string(name) + "`");
  }
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), tf.s0);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InputError("bad threshold parameter `" + std::string(value) + "`");
  }
  tf.validate();
  return tf;
}

std::string ThresholdFn::to_string() const {
  const char* name = form == ThresholdForm::constant ? "const"
                     : form == ThresholdForm::linear ? "linear"
                                                     : "square";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s0);
  return std::string(name) + ':' + std::string(buf, ptr);
}

void ThresholdFn::validate() const {
  if (!std::isfinite(s0) || s0 < 0.0) throw InputError("threshold parameter must be >= 0");
  if (kind == ThresholdKind::tau && form != ThresholdForm::constant && s0 == 0.0) {
    throw InputError("tau linear/square forms need a positive parameter");
  }
}

double eval_threshold(const ThresholdFn& tf, double x) {
  if (tf.kind == ThresholdKind::omega) {
    if (tf.form == ThresholdForm::constant) return tf.s0;
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("omega argument must be a weight in [0,1]");
    const double rest = 1.0 - x;
    const double v = tf.form == ThresholdForm::linear ? tf.s0 * rest : tf.s0 * rest * rest;
    return std::max(v, 0.0);
  }
  if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("tau argument must be a size >= 0");
  switch (tf.form) {
    case ThresholdForm::constant: return tf.s0;
    case ThresholdForm::linear: return std::max(1.0 - x / tf.s0, 0.0);
    case ThresholdForm::square: return std::max(1.0 - std::sqrt(x / tf.s0), 0.0);
  }
  return 0.0;
}

bool merges(const ThresholdFn& tf, double d, double min_size) {
  if (tf.kind == ThresholdKind::omega) return eval_threshold(tf, d) > min_size;
  return d < eval_threshold(tf, min_size);
}

ThresholdKind parse_threshold_kind(std::string_view text) {
  if (text == "omega") return ThresholdKind::omega;
  if (text == "tau") return ThresholdKind::tau;
  throw InputError("threshold kind must be tau or omega, got `" + std::string(text) + "`");
}

}  // namespace basinseg
