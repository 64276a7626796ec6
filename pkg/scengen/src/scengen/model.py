"""Generator and critic networks, and the training configuration."""

from dataclasses import dataclass, field

import torch
from torch import nn

GENERATOR_WIDTHS = (128, 256, 512, 1024)
CRITIC_WIDTHS = (512, 256)
LEAKY_SLOPE = 0.2
BN_MOMENTUM = 0.8  # moving-average convention; torch stores the complement


@dataclass
class TrainConfig:
    epochs: int = 200
    batch_size: int = 64
    noise_dim: int = 32
    out_dim: int = 24
    rho: float = 10.0          # gradient-penalty coefficient
    lr: float = 2e-4
    critic_steps: int = 5
    seed: int = 0
    eval_samples: int = 128    # generated batch for per-epoch held-out metrics


class Generator(nn.Module):
    def __init__(self, noise_dim=32, out_dim=24):
        super().__init__()
        layers = [nn.Linear(noise_dim, GENERATOR_WIDTHS[0]), nn.ReLU()]
        for w_in, w_out in zip(GENERATOR_WIDTHS, GENERATOR_WIDTHS[1:]):
            layers += [nn.Linear(w_in, w_out),
                       nn.BatchNorm1d(w_out, momentum=1.0 - BN_MOMENTUM),
                       nn.ReLU()]
        layers += [nn.Linear(GENERATOR_WIDTHS[-1], out_dim), nn.Tanh()]
        self.net = nn.Sequential(*layers)
        self.noise_dim = noise_dim
        self.out_dim = out_dim

    def forward(self, z):
        return self.net(z)


class Critic(nn.Module):
    def __init__(self, in_dim=24):
        super().__init__()
        self.net = nn.Sequential(
            nn.Linear(in_dim, CRITIC_WIDTHS[0]), nn.LeakyReLU(LEAKY_SLOPE),
            nn.Linear(CRITIC_WIDTHS[0], CRITIC_WIDTHS[1]), nn.LeakyReLU(LEAKY_SLOPE),
            nn.Linear(CRITIC_WIDTHS[1], 1),
        )

    def forward(self, x):
        return self.net(x)


def gradient_penalty(critic, real, fake, rho, rng=None):
    """Penalty on the critic gradient norm at random interpolates."""
    eps = torch.rand(real.shape[0], 1, generator=rng, dtype=real.dtype)
    mixed = (eps * real + (1.0 - eps) * fake).requires_grad_(True)
    scores = critic(mixed)
    grads = torch.autograd.grad(scores.sum(), mixed, create_graph=True)[0]
    norms = grads.norm(2, dim=1)
    return rho * ((norms - 1.0) ** 2).mean()
