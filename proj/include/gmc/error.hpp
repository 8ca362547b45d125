#pragma once

#include <stdexcept>
#include <string>

namespace gmc {

enum class ErrorKind {
  domain,
  divergence,
  pole,
  non_psd,
  insufficient_order,
  calibration,
  convergence,
  input,
  io
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Gamma pole hit inside a product formula. `factor` is the running index j,
// `which` names the Gamma call ("num_a", "num_b", "den").
class PoleError : public Error {
 public:
  PoleError(int factor, std::string which, double argument)
      : Error(ErrorKind::pole,
              "Gamma pole at factor j=" + std::to_string(factor) + " (" + which +
                  ", argument " + std::to_string(argument) + ")"),
        factor_(factor),
        which_(std::move(which)),
        argument_(argument) {}
  int factor() const { return factor_; }
  const std::string& which() const { return which_; }
  double argument() const { return argument_; }

 private:
  int factor_;
  std::string which_;
  double argument_;
};

}  // namespace gmc
