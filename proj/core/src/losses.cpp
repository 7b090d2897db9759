// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/losses.hpp"

#include <cmath>

#include "chronogan/errors.hpp"
#include "chronogan/ops.hpp"

namespace chronogan::loss {

using ad::Shape;

void LossWeights::validate() const {
  const double all[] = {recon_phase1, recon_phase3, adv_ae_phase1, adv_ae_phase3, adv_g, supervised, moment, ts};
  for (double w : all) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ContractError("loss weights must be finite and nonnegative");
  }
  // r1 / a1 > r3 / a3, written without dividing by a possibly-zero weight.
  if (!(recon_phase1 * adv_ae_phase3 > recon_phase3 * adv_ae_phase1)) {
    throw ContractError("reconstruction/adversarial ratio must be larger in phase 1 than in phase 3");
  }
}

namespace {

template <typename Real>
void require_rank3(const Var<Real>& v, const char* what) {
  if (v.shape().size() != 3) throw ShapeError(std::string(what) + " expects (N x T x F), got " + ad::to_string(v.shape()));
}

// (N x T [x 1]) -> (N x T).
template <typename Real>
Var<Real> per_step(Var<Real> y, const char* what) {
  const Shape& s = y.shape();
  if (s.size() == 2) return y;
  if (s.size() == 3 && s[2] == 1) return ad::reshape(y, Shape{s[0], s[1]});
  throw ShapeError(std::string(what) + " expects (N x T) or (N x T x 1) probabilities, got " + ad::to_string(s));
}

template <typename Real>
void require_probabilities(const Var<Real>& y) {
  for (Real v : y.value().values()) {
    if (!(v >= Real(0) && v <= Real(1))) throw DomainError("discriminator outputs must lie in [0, 1]");
  }
}

// Mean over samples of the per-sample sum over time of log(y).
template <typename Real>
Var<Real> mean_time_sum_log(Var<Real> probs) {
  const Real lo = static_cast<Real>(kProbClamp);
  return ad::mean(ad::sum(ad::log(ad::clamp(probs, lo, Real(1) - lo)), 1), 0);
}

template <typename Real>
Var<Real> one_minus(Var<Real> v) {
  return ad::add_scalar(ad::scale(v, Real(-1)), Real(1));
}

// Batch mean of per-sample sum over time of the feature-wise L2 norm.
template <typename Real>
Var<Real> mean_time_sum_norm(Var<Real> diff) {
  return ad::mean(ad::sum(ad::sqrt(ad::sum(ad::square(diff), 2)), 1), 0);
}

template <typename Real>
void require_same_tf(const Var<Real>& a, const Var<Real>& b, const char* what) {
  require_rank3(a, what);
  require_rank3(b, what);
  if (a.shape()[1] != b.shape()[1] || a.shape()[2] != b.shape()[2]) {
    throw ShapeError(std::string(what) + ": timesteps/features differ between " + ad::to_string(a.shape()) + " and " +
                     ad::to_string(b.shape()));
  }
}

}  // namespace

template <typename Real>
Var<Real> reconstruction_loss(Var<Real> x, Var<Real> x_ae) {
  require_rank3(x, "reconstruction_loss");
  if (x.shape() != x_ae.shape()) throw ShapeError("reconstruction_loss: shapes differ");
  return mean_time_sum_norm(ad::sub(x, x_ae));
}

template <typename Real>
Var<Real> discriminator_loss(Var<Real> y_real, Var<Real> y_fake) {
  y_real = per_step(y_real, "discriminator_loss");
  y_fake = per_step(y_fake, "discriminator_loss");
  require_probabilities(y_real);
  require_probabilities(y_fake);
  Var<Real> objective = ad::add(mean_time_sum_log(y_real), mean_time_sum_log(one_minus(y_fake)));
  return ad::scale(objective, Real(-1));
}

template <typename Real>
Var<Real> generator_adversarial_loss(Var<Real> y_fake) {
  y_fake = per_step(y_fake, "generator_adversarial_loss");
  require_probabilities(y_fake);
  return ad::scale(mean_time_sum_log(y_fake), Real(-1));
}

template <typename Real>
AdversarialLosses<Real> adversarial_losses(Var<Real> y_real, Var<Real> y_fake) {
  return {discriminator_loss(y_real, y_fake), generator_adversarial_loss(y_fake)};
}

template <typename Real>
Var<Real> supervised_loss(Var<Real> latent, Var<Real> supervisor_out) {
  require_rank3(latent, "supervised_loss");
  if (latent.shape() != supervisor_out.shape()) throw ShapeError("supervised_loss: shapes differ");
  const std::size_t steps = latent.shape()[1];
  if (steps < 3) throw ContractError("supervised_loss needs at least three timesteps");
  Var<Real> target = ad::slice(latent, 1, 2, steps);
  Var<Real> estimate = ad::slice(supervisor_out, 1, 0, steps - 2);
  return mean_time_sum_norm(ad::sub(target, estimate));
}

template <typename Real>
Var<Real> moment_loss(Var<Real> x, Var<Real> x_synth) {
  require_same_tf(x, x_synth, "moment_loss");
  Var<Real> mean_gap = ad::sum_all(ad::abs(ad::sub(ad::mean(x, 0), ad::mean(x_synth, 0))));
  Var<Real> var_gap = ad::sum_all(ad::abs(ad::sub(ad::variance(x, 0), ad::variance(x_synth, 0))));
  return ad::add(mean_gap, var_gap);
}

template <typename Real>
Var<Real> statistic_loss(Statistic kind, Var<Real> x, Var<Real> x_synth, std::span<const double> time_weights) {
  require_same_tf(x, x_synth, "ts_loss");
  Var<Real> real = series_statistic(kind, x, time_weights);
  Var<Real> synth = series_statistic(kind, x_synth, time_weights);
  Var<Real> mean_term = ad::sum_all(ad::square(ad::sub(ad::mean(real, 0), ad::mean(synth, 0))));
  Var<Real> std_term =
      ad::sum_all(ad::square(ad::sub(ad::sqrt(ad::variance(real, 0)), ad::sqrt(ad::variance(synth, 0)))));
  return ad::add(mean_term, std_term);
}

template <typename Real>
Var<Real> ts_loss(Var<Real> x, Var<Real> x_synth, std::span<const double> time_weights) {
  Var<Real> total;
  for (Statistic kind : kAllStatistics) {
    Var<Real> term = statistic_loss(kind, x, x_synth, time_weights);
    total = total ? ad::add(total, term) : term;
  }
  return total;
}

template <typename Real>
Var<Real> compose_autoencoder_loss(const LossWeights& weights, Var<Real> recon, Var<Real> adversarial, int phase) {
  if (phase != 1 && phase != 3) throw ContractError("autoencoder loss is defined for phases 1 and 3 only");
  const double wr = phase == 1 ? weights.recon_phase1 : weights.recon_phase3;
  const double wu = phase == 1 ? weights.adv_ae_phase1 : weights.adv_ae_phase3;
  return ad::add(ad::scale(recon, static_cast<Real>(wr)), ad::scale(adversarial, static_cast<Real>(wu)));
}

template <typename Real>
Var<Real> compose_generator_loss(const LossWeights& weights, Var<Real> adversarial, Var<Real> supervised,
                                 Var<Real> moment, Var<Real> ts) {
  for (const Var<Real>* v : {&adversarial, &supervised, &moment, &ts}) {
    if (v->value().size() != 1) throw ShapeError("generator loss components must be scalars");
    if (!std::isfinite(v->value()[0])) throw DomainError("generator loss component is not finite");
  }
  Var<Real> total = ad::scale(adversarial, static_cast<Real>(weights.adv_g));
  total = ad::add(total, ad::scale(supervised, static_cast<Real>(weights.supervised)));
  total = ad::add(total, ad::scale(moment, static_cast<Real>(weights.moment)));
  return ad::add(total, ad::scale(ts, static_cast<Real>(weights.ts)));
}

#define CHRONOGAN_INSTANTIATE_LOSSES(Real)                                                                        \
  template Var<Real> reconstruction_loss(Var<Real>, Var<Real>);                                                   \
  template Var<Real> discriminator_loss(Var<Real>, Var<Real>);                                                    \
  template Var<Real> generator_adversarial_loss(Var<Real>);                                                       \
  template AdversarialLosses<Real> adversarial_losses(Var<Real>, Var<Real>);                                      \
  template Var<Real> supervised_loss(Var<Real>, Var<Real>);                                                       \
  template Var<Real> moment_loss(Var<Real>, Var<Real>);                                                           \
  template Var<Real> statistic_loss(Statistic, Var<Real>, Var<Real>, std::span<const double>);                    \
  template Var<Real> ts_loss(Var<Real>, Var<Real>, std::span<const double>);                                      \
  template Var<Real> compose_autoencoder_loss(const LossWeights&, Var<Real>, Var<Real>, int);                     \
  template Var<Real> compose_generator_loss(const LossWeights&, Var<Real>, Var<Real>, Var<Real>, Var<Real>);

CHRONOGAN_INSTANTIATE_LOSSES(float)
CHRONOGAN_INSTANTIATE_LOSSES(double)

#undef CHRONOGAN_INSTANTIATE_LOSSES

}  // namespace chronogan::loss
