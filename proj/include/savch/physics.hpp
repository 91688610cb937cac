#pragma once

#include <string_view>

#include "savch/field.hpp"

namespace savch {

enum class Regularization { Linear, Willmore };

std::string_view to_string(Regularization kind) noexcept;
Regularization parse_regularization(std::string_view name);

/// Model and stabilisation parameters. Defaults are the reference set used
/// throughout the experiments (eps = 0.06, alpha = 0.3, beta = 6e-4,
/// S1 = S2 = 2, S3 = 1e-3, B = 1, unit mobility).
struct ModelParams {
  double eps = 6e-2;
  double alpha = 0.3;
  double beta = 6e-4;
  double s1 = 2.0;
  double s2 = 2.0;
  double s3 = 1e-3;
  double m0 = 1.0;
  double b = 1.0;
  /// Floor in sqrt(|grad phi|^2 + delta^2). Smaller values make the flux stiff
  /// where grad phi vanishes inside the bulk overshoot and break anisotropic runs.
  double delta_n = 0.5;
  Regularization kind = Regularization::Linear;

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

struct DoubleWell {
  ScalarField F;       // (phi^2 - 1)^2 / 4
  ScalarField f;       // phi^3 - phi
  ScalarField fprime;  // 3 phi^2 - 1
};

DoubleWell double_well(const ScalarField& phi);

/// n = grad / sqrt(|grad|^2 + delta^2). With delta = 0 a vanishing gradient throws.
VectorField unit_normal(const VectorField& grad_phi, double delta);

/// Fourfold anisotropy 1 + alpha (4 sum n_i^4 - 3).
ScalarField gamma(const VectorField& n, double alpha);

/// d gamma / d n_i = 16 alpha n_i^3.
VectorField gamma_n_gradient(const VectorField& n, double alpha);

/// m = gamma grad phi + P grad_n gamma / |grad phi|_delta * (|grad phi|^2 / 2 + F / eps^2),
/// with P = I - n n^T. Throws std::runtime_error on non-finite output.
VectorField m_field(const ScalarField& phi, const ModelParams& params);

/// Anisotropic part of the chemical potential: gamma f / eps^2 - div m.
ScalarField variational_force(const ScalarField& phi, const ModelParams& params);

/// Willmore part: beta (Lap - f'/eps^2)(Lap phi - f/eps^2).
ScalarField willmore_force(const ScalarField& phi, const ModelParams& params);

/// beta Lap^2 phi, the linear-regularisation part of the chemical potential.
ScalarField linear_regularization_force(const ScalarField& phi, const ModelParams& params);

struct EnergyBreakdown {
  double aniso_part = 0.0;  // int gamma (|grad phi|^2 / 2 + F / eps^2)
  double reg_part = 0.0;    // (beta / 2) int G
  double total = 0.0;
};

EnergyBreakdown original_energy(const ScalarField& phi, const ModelParams& params);

/// SAV nonlinear field: H (linear regularisation) or Z (Willmore) together
/// with the radicand of the auxiliary variable, so that field * sqrt(radicand)
/// is the nonlinear part of the chemical potential.
struct SavField {
  ScalarField field;
  double radicand;
};

/// Throws std::runtime_error if the radicand is not strictly positive.
SavField sav_field(const ScalarField& phi, const ModelParams& params);

/// U(0) = sqrt(radicand at phi0).
double u_initial(const ScalarField& phi0, const ModelParams& params);

}  // namespace savch
