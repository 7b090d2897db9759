// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <span>

#include "chronogan/graph.hpp"
#include "chronogan/series_stats.hpp"

// Training objectives. Sequence batches are (N x T x F) Vars; discriminator
// outputs are (N x T) or (N x T x 1) probabilities. Every loss is a batch
// mean of a per-sample quantity, so magnitudes do not scale with N.
namespace chronogan::loss {

/// Loss weights. The autoencoder weights are phase specific; the
/// reconstruction-to-adversarial ratio must drop from phase 1 to phase 3.
struct LossWeights {
  double recon_phase1 = 10.0;
  double recon_phase3 = 1.0;
  double adv_ae_phase1 = 1.0;
  double adv_ae_phase3 = 1.0;
  double adv_g = 1.0;
  double supervised = 1.0;
  double moment = 1.0;
  double ts = 1.0;

  /// ContractError on negative weights or a non-decreasing ratio.
  void validate() const;
};

/// Probabilities are clamped to [kProbClamp, 1 - kProbClamp] before logs.
inline constexpr double kProbClamp = 1e-7;

/// Batch mean of sum_t ||x_t - x_ae_t||_2.
template <typename Real>
Var<Real> reconstruction_loss(Var<Real> x, Var<Real> x_ae);

/// -(mean sum_t log y_t + mean sum_t log(1 - y~_t)).
template <typename Real>
Var<Real> discriminator_loss(Var<Real> y_real, Var<Real> y_fake);

/// Non-saturating form: -mean sum_t log y~_t.
template <typename Real>
Var<Real> generator_adversarial_loss(Var<Real> y_fake);

template <typename Real>
struct AdversarialLosses {
  Var<Real> discriminator;
  Var<Real> generator;
};

template <typename Real>
AdversarialLosses<Real> adversarial_losses(Var<Real> y_real, Var<Real> y_fake);

/// Batch mean of sum_{t>=3} ||h_t - s_{t-2}||_2, where s_{t-2} is the
/// supervisor output two steps earlier. Needs T >= 3.
template <typename Real>
Var<Real> supervised_loss(Var<Real> latent, Var<Real> supervisor_out);

/// sum_{t,f} |mean_n x - mean_n x~| + sum_{t,f} |var_n x - var_n x~|, with
/// population variance over the batch. Batch sizes may differ.
template <typename Real>
Var<Real> moment_loss(Var<Real> x, Var<Real> x_synth);

/// Sum over the four statistics of sum_f (mean_n S - mean_n S~)^2 +
/// sum_f (std_n S - std_n S~)^2 with population std over the batch.
template <typename Real>
Var<Real> ts_loss(Var<Real> x, Var<Real> x_synth, std::span<const double> time_weights = {});

/// One statistic's contribution to ts_loss.
template <typename Real>
Var<Real> statistic_loss(Statistic kind, Var<Real> x, Var<Real> x_synth, std::span<const double> time_weights = {});

/// w_R(phase) * recon + w_U_ae(phase) * adversarial, phase in {1, 3}.
template <typename Real>
Var<Real> compose_autoencoder_loss(const LossWeights& weights, Var<Real> recon, Var<Real> adversarial, int phase);

/// w_U_g * adversarial + w_S * supervised + w_V * moment + w_TS * ts.
template <typename Real>
Var<Real> compose_generator_loss(const LossWeights& weights, Var<Real> adversarial, Var<Real> supervised,
                                 Var<Real> moment, Var<Real> ts);

}  // namespace chronogan::loss
