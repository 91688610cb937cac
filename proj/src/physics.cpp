#include "savch/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "savch/spectral.hpp"

namespace savch {

std::string_view to_string(Regularization kind) noexcept {
  return kind == Regularization::Linear ? "linear" : "willmore";
}

Regularization parse_regularization(std::string_view name) {
  if (name == "linear") return Regularization::Linear;
  if (name == "willmore") return Regularization::Willmore;
  throw std::invalid_argument("unknown regularization '" + std::string(name) + "' (expected linear or willmore)");
}

void ModelParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be > 0");
  };
  auto nonnegative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  };
  positive(eps, "eps");
  positive(m0, "m0");
  positive(b, "b");
  nonnegative(alpha, "alpha");
  nonnegative(beta, "beta");
  nonnegative(s1, "s1");
  nonnegative(s2, "s2");
  nonnegative(s3, "s3");
  nonnegative(delta_n, "delta_n");
}

DoubleWell double_well(const ScalarField& phi) {
  DoubleWell out{ScalarField(phi.grid()), ScalarField(phi.grid()), ScalarField(phi.grid())};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double p = phi[i];
    const double q = p * p - 1.0;
    out.F[i] = 0.25 * q * q;
    out.f[i] = p * q;
    out.fprime[i] = 3.0 * p * p - 1.0;
  }
  return out;
}

VectorField unit_normal(const VectorField& grad_phi, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("normal regularization delta must be >= 0");
  const ScalarField g2 = grad_phi.norm_squared();
  VectorField n(grad_phi.grid());
  const double d2 = delta * delta;
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const double r = std::sqrt(g2[i] + d2);
    if (r == 0.0) {
      throw std::domain_error("unit normal undefined at node " + std::to_string(i) +
                              ": zero gradient with delta = 0");
    }
    for (int a = 0; a < n.dim(); ++a) n[a][i] = grad_phi[a][i] / r;
  }
  return n;
}

ScalarField gamma(const VectorField& n, double alpha) {
  ScalarField out(n.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < n.dim(); ++a) {
      const double c2 = n[a][i] * n[a][i];
      s += c2 * c2;
    }
    out[i] = 1.0 + alpha * (4.0 * s - 3.0);
  }
  return out;
}

VectorField gamma_n_gradient(const VectorField& n, double alpha) {
  VectorField out(n.grid());
  for (int a = 0; a < n.dim(); ++a) {
    for (std::size_t i = 0; i < out[a].size(); ++i) {
      const double c = n[a][i];
      out[a][i] = 16.0 * alpha * c * c * c;
    }
  }
  return out;
}

namespace {

// Pointwise quantities shared by the energy and the m field.
struct AnisotropicTerms {
  VectorField grad;
  VectorField normal;
  ScalarField gamma;
  ScalarField density;  // |grad phi|^2 / 2 + F / eps^2
  DoubleWell well;
};

AnisotropicTerms anisotropic_terms(const ScalarField& phi, const ModelParams& params) {
  VectorField grad = gradient(phi);
  VectorField normal = unit_normal(grad, params.delta_n);
  ScalarField gam = gamma(normal, params.alpha);
  DoubleWell well = double_well(phi);
  ScalarField density = grad.norm_squared();
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = 0.5 * density[i] + inv_eps2 * well.F[i];
  return {std::move(grad), std::move(normal), std::move(gam), std::move(density), std::move(well)};
}

VectorField m_field_from(const AnisotropicTerms& t, const ModelParams& params) {
  const int dim = t.grad.dim();
  VectorField grad_gamma = gamma_n_gradient(t.normal, params.alpha);
  VectorField m(t.grad.grid());
  const double d2 = params.delta_n * params.delta_n;
  for (std::size_t i = 0; i < t.density.size(); ++i) {
    double g2 = 0.0;
    double n_dot = 0.0;
    for (int a = 0; a < dim; ++a) {
      g2 += t.grad[a][i] * t.grad[a][i];
      n_dot += t.normal[a][i] * grad_gamma[a][i];
    }
    const double scale = t.density[i] / std::sqrt(g2 + d2);
    for (int a = 0; a < dim; ++a) {
      const double projected = grad_gamma[a][i] - t.normal[a][i] * n_dot;
      m[a][i] = t.gamma[i] * t.grad[a][i] + projected * scale;
    }
  }
  for (int a = 0; a < dim; ++a) {
    if (!m[a].all_finite()) {
      throw std::runtime_error("m field is not finite; the normal regularization delta is too small");
    }
  }
  return m;
}

ScalarField variational_force_from(const AnisotropicTerms& t, const ModelParams& params) {
  ScalarField out = -divergence(m_field_from(t, params));
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += inv_eps2 * t.gamma[i] * t.well.f[i];
  return out;
}

double anisotropic_energy_from(const AnisotropicTerms& t) { return integrate(t.gamma * t.density); }

// w = Lap phi - f / eps^2
ScalarField willmore_residual(const ScalarField& phi, const DoubleWell& well, const ModelParams& params) {
  ScalarField w = laplacian(phi);
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= inv_eps2 * well.f[i];
  return w;
}

double regularization_energy(const ScalarField& phi, const DoubleWell& well, const ModelParams& params) {
  if (params.kind == Regularization::Linear) {
    const Spectrum lap = laplacian(forward(phi));
    return 0.5 * params.beta * inner_product(lap, lap);
  }
  const ScalarField w = willmore_residual(phi, well, params);
  return 0.5 * params.beta * integrate(w * w);
}

ScalarField willmore_force_from(const ScalarField& phi, const DoubleWell& well, const ModelParams& params) {
  const ScalarField w = willmore_residual(phi, well, params);
  ScalarField out = laplacian(w);
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = params.beta * (out[i] - inv_eps2 * well.fprime[i] * w[i]);
  return out;
}

}  // namespace

VectorField m_field(const ScalarField& phi, const ModelParams& params) {
  return m_field_from(anisotropic_terms(phi, params), params);
}

ScalarField variational_force(const ScalarField& phi, const ModelParams& params) {
  return variational_force_from(anisotropic_terms(phi, params), params);
}

ScalarField willmore_force(const ScalarField& phi, const ModelParams& params) {
  return willmore_force_from(phi, double_well(phi), params);
}

ScalarField linear_regularization_force(const ScalarField& phi, const ModelParams& params) {
  return params.beta * bilaplacian(phi);
}

EnergyBreakdown original_energy(const ScalarField& phi, const ModelParams& params) {
  const AnisotropicTerms t = anisotropic_terms(phi, params);
  EnergyBreakdown e;
  e.aniso_part = anisotropic_energy_from(t);
  e.reg_part = regularization_energy(phi, t.well, params);
  e.total = e.aniso_part + e.reg_part;
  return e;
}

SavField sav_field(const ScalarField& phi, const ModelParams& params) {
  const AnisotropicTerms t = anisotropic_terms(phi, params);
  ScalarField numerator = variational_force_from(t, params);
  double radicand = anisotropic_energy_from(t) + params.b;
  if (params.kind == Regularization::Willmore) {
    numerator += willmore_force_from(phi, t.well, params);
    radicand += regularization_energy(phi, t.well, params);
  }
  if (!(radicand > 0.0) || !std::isfinite(radicand)) {
    throw std::runtime_error("SAV radicand " + std::to_string(radicand) +
                             " is not positive; check alpha (gamma < 0) or B");
  }
  numerator *= 1.0 / std::sqrt(radicand);
  return {std::move(numerator), radicand};
}

double u_initial(const ScalarField& phi0, const ModelParams& params) {
  return std::sqrt(sav_field(phi0, params).radicand);
}

}  // namespace savch
