"""Adversarial training loop with gradient penalty, plus sample generation
from a saved model bundle."""

from dataclasses import dataclass, field

import numpy as np
import torch

from .data import ColumnScaler
from .metrics import empirical_wasserstein, fid, median_bandwidth_kernel, mmd2
from .model import Critic, Generator, TrainConfig, gradient_penalty


class TrainingDiverged(RuntimeError):
    def __init__(self, epoch):
        super().__init__(f"non-finite loss at epoch {epoch}")
        self.epoch = epoch


@dataclass
class GenerationReport:
    critic_losses: list = field(default_factory=list)
    generator_losses: list = field(default_factory=list)
    heldout_mmd: list = field(default_factory=list)
    final_wasserstein: float = float("nan")
    final_fid: float = float("nan")
    final_mmd: float = float("nan")

    def as_dict(self):
        return {
            "critic_losses": [float(v) for v in self.critic_losses],
            "generator_losses": [float(v) for v in self.generator_losses],
            "heldout_mmd": [float(v) for v in self.heldout_mmd],
            "final_wasserstein": float(self.final_wasserstein),
            "final_fid": float(self.final_fid),
            "final_mmd": float(self.final_mmd),
        }


def _sample_noise(n, dim, rng):
    return torch.randn(n, dim, generator=rng)


def _generated(generator, n, dim, rng):
    generator.eval()
    with torch.no_grad():
        out = generator(_sample_noise(n, dim, rng)).numpy()
    generator.train()
    return out


def train(data, cfg=None):
    """Fit the generator on daily profiles (kW); returns (bundle, report).

    Data is scaled per column onto the tanh range before training; the
    80/20 train/held-out split drives the per-epoch quality metrics.
    """
    cfg = cfg or TrainConfig()
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != cfg.out_dim:
        raise ValueError(f"data must be (n, {cfg.out_dim})")
    if data.shape[0] < 2 * cfg.batch_size:
        raise ValueError("need at least two batches of training data")

    torch.manual_seed(cfg.seed)
    rng = torch.Generator().manual_seed(cfg.seed)
    np_rng = np.random.default_rng(cfg.seed)

    perm = np_rng.permutation(data.shape[0])
    split = int(0.8 * data.shape[0])
    train_rows, heldout = data[perm[:split]], data[perm[split:]]
    scaler = ColumnScaler(train_rows)
    scaled = torch.tensor(scaler.transform(train_rows), dtype=torch.float32)

    generator = Generator(cfg.noise_dim, cfg.out_dim)
    critic = Critic(cfg.out_dim)
    opt_g = torch.optim.Adam(generator.parameters(), lr=cfg.lr, betas=(0.5, 0.9))
    opt_c = torch.optim.Adam(critic.parameters(), lr=cfg.lr, betas=(0.5, 0.9))

    report = GenerationReport()
    kernel = median_bandwidth_kernel(heldout, heldout)
    n_train = scaled.shape[0]

    for epoch in range(1, cfg.epochs + 1):
        order = torch.randperm(n_train, generator=rng)
        c_losses = []
        g_losses = []
        for start in range(0, n_train - cfg.batch_size + 1, cfg.batch_size):
            real = scaled[order[start:start + cfg.batch_size]]
            for _ in range(cfg.critic_steps):
                fake = generator(_sample_noise(len(real), cfg.noise_dim, rng)).detach()
                score_gap = critic(fake).mean() - critic(real).mean()
                loss_c = score_gap + gradient_penalty(critic, real, fake,
                                                      cfg.rho, rng)
                opt_c.zero_grad()
                loss_c.backward()
                opt_c.step()
            fake = generator(_sample_noise(len(real), cfg.noise_dim, rng))
            loss_g = -critic(fake).mean()
            opt_g.zero_grad()
            loss_g.backward()
            opt_g.step()
            # reported critic loss is the plain score gap; the penalty only
            # steers the update
            c_losses.append(float(score_gap.detach()))
            g_losses.append(float(loss_g.detach()))
        epoch_c = float(np.mean(c_losses))
        epoch_g = float(np.mean(g_losses))
        if not (np.isfinite(epoch_c) and np.isfinite(epoch_g)):
            raise TrainingDiverged(epoch)
        report.critic_losses.append(epoch_c)
        report.generator_losses.append(epoch_g)

        sample = scaler.inverse(_generated(generator, cfg.eval_samples,
                                           cfg.noise_dim, rng))
        report.heldout_mmd.append(mmd2(sample, heldout, kernel, biased=True))

    sample = scaler.inverse(_generated(generator, max(cfg.eval_samples, 64),
                                       cfg.noise_dim, rng))
    report.final_mmd = report.heldout_mmd[-1]
    report.final_wasserstein = empirical_wasserstein(sample[:64], heldout[:64])
    mu_x, cov_x = heldout.mean(axis=0), np.cov(heldout, rowvar=False)
    mu_g, cov_g = sample.mean(axis=0), np.cov(sample, rowvar=False)
    # tiny ridge keeps near-singular empirical covariances PSD
    ridge = 1e-6 * np.eye(cfg.out_dim)
    report.final_fid = fid(mu_x, cov_x + ridge, mu_g, cov_g + ridge)

    bundle = {
        "generator_state": generator.state_dict(),
        "scaler": scaler.state(),
        "noise_dim": cfg.noise_dim,
        "out_dim": cfg.out_dim,
    }
    return bundle, report


def save_bundle(path, bundle):
    torch.save(bundle, path)


def load_bundle(path):
    return torch.load(path, weights_only=False)


def generate(bundle, n, seed=0):
    """Draw ``n`` daily profiles (kW) from a trained model bundle."""
    generator = Generator(bundle["noise_dim"], bundle["out_dim"])
    generator.load_state_dict(bundle["generator_state"])
    rng = torch.Generator().manual_seed(seed)
    if n == 0:
        return np.zeros((0, bundle["out_dim"]))
    raw = _generated(generator, n, bundle["noise_dim"], rng)
    return ColumnScaler.from_state(bundle["scaler"]).inverse(raw)
