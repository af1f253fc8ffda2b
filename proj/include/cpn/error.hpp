#pragma once

#include <stdexcept>
#include <string>

namespace cpn {

enum class Errc {
  dimension_mismatch,
  not_in_algebra,
  invalid_input,
  singular_point,
  degenerate_metric,
  rank_deficient,
  frame_discontinuity,
  non_convergence,
  io_failure,
  config,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cpn
