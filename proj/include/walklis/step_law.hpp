#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace walklis {

enum class LawKind : std::uint32_t {
  custom = 0,   // walk built from explicit values, not generatable
  simple = 1,   // +-1 with probability 1/2 each
  lazy = 2,     // -1,0,+1 w.p. 1/4,1/2,1/4, rescaled to unit variance
  uniform = 3,  // discrete uniform on {-a..a}, rescaled to unit variance
  normal = 4,   // standard normal
};

// Step distribution of a d-dimensional walk; coordinates are independent
// copies of the 1-d law. Every generatable law has zero mean and unit
// per-coordinate variance after rescaling.
struct StepLaw {
  LawKind kind = LawKind::simple;
  int dimension = 1;
  int uniform_half_width = 1;  // the a of uniform {-a..a}

  bool integer_valued() const { return kind == LawKind::simple; }

  // Multiplier applied to the raw integer draw so the step has variance 1.
  double step_scale() const {
    switch (kind) {
      case LawKind::simple: return 1.0;
      case LawKind::lazy: return std::sqrt(2.0);
      case LawKind::uniform: {
        const double a = uniform_half_width;
        return std::sqrt(3.0 / (a * (a + 1.0)));
      }
      default: return 1.0;
    }
  }

  std::string name() const {
    switch (kind) {
      case LawKind::custom: return "custom";
      case LawKind::simple: return "simple";
      case LawKind::lazy: return "lazy";
      case LawKind::uniform: return "uniform:" + std::to_string(uniform_half_width);
      case LawKind::normal: return "normal";
    }
    return "?";
  }

  // Accepts "simple", "lazy", "uniform:a", "normal".
  static StepLaw parse(std::string_view text, int dimension = 1) {
    StepLaw law;
    law.dimension = dimension;
    if (dimension < 1) throw std::invalid_argument("step law: dimension must be >= 1");
    if (text == "simple") {
      law.kind = LawKind::simple;
    } else if (text == "lazy") {
      law.kind = LawKind::lazy;
    } else if (text == "normal") {
      law.kind = LawKind::normal;
    } else if (text == "uniform" || text.starts_with("uniform:")) {
      law.kind = LawKind::uniform;
      law.uniform_half_width = 1;
      if (auto pos = text.find(':'); pos != std::string_view::npos) {
        const std::string arg(text.substr(pos + 1));
        law.uniform_half_width = std::stoi(arg);
      }
      if (law.uniform_half_width < 1) {
        throw std::invalid_argument("step law: uniform half-width must be >= 1");
      }
    } else {
      throw std::invalid_argument("unknown step law: " + std::string(text));
    }
    return law;
  }

  bool operator==(const StepLaw&) const = default;
};

}  // namespace walklis
