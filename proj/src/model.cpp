#include "qprop/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qprop {

bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void TruncationSpec::validate() const {
  if (fock_cutoff < 1) throw std::invalid_argument("fock_cutoff must be >= 1");
  if (series_order < 0) throw std::invalid_argument("series_order must be >= 0");
  if (quad_points < 2) throw std::invalid_argument("quad_points must be >= 2");
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
}

Model::Model(SystemSpec system, BathSpec bath)
    : system_(std::move(system)), bath_(std::move(bath)) {
  if (!std::isfinite(system_.omega))
    throw std::invalid_argument("non-finite system frequency");
  if (system_.drive_omega && !std::isfinite(*system_.drive_omega))
    throw std::invalid_argument("non-finite drive frequency");
  for (std::size_t k = 0; k < bath_.modes.size(); ++k) {
    const auto& m = bath_.modes[k];
    if (!(m.omega > 0.0) || !std::isfinite(m.omega))
      throw std::invalid_argument("non-positive mode frequency (mode " +
                                  std::to_string(k) + ")");
    if (!std::isfinite(m.coupling))
      throw std::invalid_argument("non-finite coupling (mode " +
                                  std::to_string(k) + ")");
  }
}

double Model::drive_omega() const {
  if (!system_.drive_omega)
    throw std::invalid_argument("model has no drive frequency");
  return *system_.drive_omega;
}

const BathMode& Model::mode(std::size_t k) const {
  if (k >= bath_.modes.size())
    throw std::out_of_range("mode index out of range");
  return bath_.modes[k];
}

void Model::check_labels(const CoherentVector& labels, const char* name) const {
  if (labels.size() != bath_.modes.size())
    throw std::invalid_argument(std::string(name) + ": label count " +
                                std::to_string(labels.size()) +
                                " does not match mode count " +
                                std::to_string(bath_.modes.size()));
  for (const auto& z : labels)
    if (!is_finite(z))
      throw std::invalid_argument(std::string(name) + ": non-finite label");
}

}  // namespace qprop
