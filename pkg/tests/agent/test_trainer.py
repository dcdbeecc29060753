# Copyright 2025 IRT Saint Exupéry, https://www.irt-saintexupery.com
#
# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License version 3 as published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program; if not, write to the Free Software Foundation,
# Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301, USA.
"""Tests for the training loop of the agent."""

from __future__ import annotations

import re
from functools import cache

import pytest
from numpy import arange
from numpy import array
from numpy import bincount
from numpy import mean
from numpy import ones
from numpy import zeros_like
from numpy.random import default_rng
from numpy.testing import assert_equal

from gemseo_iqn.agent.agent_settings import AgentConfig
from gemseo_iqn.agent.trainer import RandomStreams
from gemseo_iqn.agent.trainer import Trainer
from gemseo_iqn.agent.trainer import act
from gemseo_iqn.agent.trainer import run_training
from gemseo_iqn.distortion.measures.cvar import CVaR
from gemseo_iqn.distortion.measures.identity import Identity
from gemseo_iqn.envlab.environments.known_bandit import KnownBandit
from gemseo_iqn.envlab.oracles import analytic_quantiles
from gemseo_iqn.harness.scores import wasserstein1
from gemseo_iqn.networks.architecture_settings import ArchitectureSpec
from gemseo_iqn.networks.dqn_network import DqnNetwork
from gemseo_iqn.networks.iqn_network import IqnNetwork
from gemseo_iqn.networks.qr_network import QrNetwork

SPEC = ArchitectureSpec(psi_hidden=(32,), feature_dim=32, embedding_dim=16)


def create_config(**settings) -> AgentConfig:
    """Create desk-scale settings for short training runs."""
    default_settings = {
        "architecture": SPEC,
        "warmup_steps": 100,
        "epsilon_decay_steps": 1000,
        "target_sync_period": 100,
        "eval_period": 10**6,
        "eval_episodes": 1,
        "seed": 3,
    }
    return AgentConfig(**{**default_settings, **settings})


def set_constant(network, bias) -> None:
    """Zero the parameters of a network except the bias of its output layer."""
    parameters = {name: zeros_like(value) for name, value in network.parameters.items()}
    parameters["f.output.bias"] = array(bias, dtype=float)
    network.set_parameters(parameters)


class RiskyBanditNetwork(IqnNetwork):
    """A network returning the exact quantile functions of the risky bandit."""

    def forward(self, states, taus):  # noqa: D102
        bandit = KnownBandit()
        taus = array(taus)
        return array([
            analytic_quantiles(bandit, arm, taus.ravel()).values.reshape(taus.shape)
            for arm in range(2)
        ]).transpose(1, 2, 0)


@pytest.fixture
def network() -> IqnNetwork:
    """A network with four actions."""
    return IqnNetwork(SPEC.model_copy(update={"action_count": 4}), rng=default_rng(1))


def test_act_exploration(network):
    """Check that a fully random policy plays the actions uniformly."""
    rng = default_rng(2)
    actions = [act(network, ones(1), Identity(), 1.0, 8, rng) for _ in range(100000)]
    frequencies = bincount(actions, minlength=4) / 100000
    assert (abs(frequencies - 0.25) < 0.01).all()


def test_act_greedy(network):
    """Check that a greedy policy maximizes the action values."""
    set_constant(network, [0.5, 0.55, 0.2, 0.55])
    assert act(network, ones(1), Identity(), 0.0, 8, default_rng()) == 1


@pytest.mark.parametrize("scale", [0.1, 1.0, 7.0])
def test_act_scale_invariance(network, scale):
    """Check that scaling the action values leaves the greedy action unchanged."""
    set_constant(network, scale * array([0.3, -0.2, 0.9, 0.1]))
    assert act(network, ones(1), Identity(), 0.0, 8, default_rng()) == 2


@pytest.mark.parametrize(
    ("measure", "expected"), [(CVaR(0.1), 0), (CVaR(1.0), 1), (Identity(), 1)]
)
def test_act_risky_bandit(measure, expected):
    """Check the risk-sensitive greedy actions of the exact risky bandit network."""
    network = RiskyBanditNetwork(SPEC)
    rng = default_rng(4)
    actions = [act(network, ones(1), measure, 0.0, 1000, rng) for _ in range(20)]
    assert actions == [expected] * 20


def test_act_error(network):
    """Check that the probability of a random action must be in [0,1]."""
    msg = "The probability of a random action must be in [0,1]; got 1.5."
    with pytest.raises(ValueError, match=re.escape(msg)):
        act(network, ones(1), Identity(), 1.5, 8, default_rng())


def test_random_streams():
    """Check that the random streams are independent and reproducible."""
    streams = RandomStreams.from_seed(1)
    values = [stream.random() for stream in vars(streams).values()]
    assert len(set(values)) == 7
    assert RandomStreams.from_seed(1).acting.random() == values[1]


@pytest.mark.parametrize(
    ("algorithm", "cls"), [("iqn", IqnNetwork), ("qr", QrNetwork), ("dqn", DqnNetwork)]
)
def test_networks(algorithm, cls):
    """Check that the networks are shaped by the environment."""
    trainer = Trainer("cliff:p=0.1", create_config(algorithm=algorithm, n_quantiles=4))
    assert isinstance(trainer.state.online, cls)
    assert trainer.state.online.spec.state_dim == 48
    assert trainer.state.online.spec.action_count == 4
    assert trainer.evaluation_environment is not trainer.environment
    trainer.run(150)
    assert trainer.state.gradient_steps == 51


def test_warmup():
    """Check that no gradient step is made before the end of the warmup."""
    trainer = Trainer("bandit:risky", create_config(warmup_steps=50))
    losses = [trainer.train_iteration().loss for _ in range(60)]
    assert losses[:49] == [None] * 49
    assert None not in losses[49:]
    assert trainer.state.gradient_steps == 11


def test_train_period():
    """Check that the gradient steps are made every train period."""
    trainer = Trainer("bandit:risky", create_config(warmup_steps=0, train_period=3))
    for _ in range(30):
        trainer.train_iteration()

    assert trainer.state.gradient_steps == 10


def test_target_sync_every_step():
    """Check that the target network follows the online one with a unit period."""
    trainer = Trainer(
        "chain:L=3", create_config(warmup_steps=10, target_sync_period=1)
    )
    for _ in range(30):
        trainer.train_iteration()
        state = trainer.state
        for name, value in state.online.parameters.items():
            assert_equal(state.target.parameters[name], value)

    assert trainer.state.target_syncs == 21


def test_target_staleness():
    """Check that the target network is constant between synchronizations."""
    trainer = Trainer("chain:L=3", create_config(warmup_steps=10, target_sync_period=5))
    snapshots = []
    for _ in range(30):
        trainer.train_iteration()
        snapshots.append(trainer.state.target.parameters["f.output.bias"].copy())

    # The fifth gradient step is made at the fourteenth environment step.
    for index in range(9, 13):
        assert_equal(snapshots[index], snapshots[9])

    assert not (snapshots[13] == snapshots[12]).all()
    assert trainer.state.target_syncs == 4


def test_determinism():
    """Check that a seed gives bit-identical training runs."""
    records = [
        run_training("cliff:p=0.1", create_config(eval_period=100), 300)
        for _ in range(2)
    ]
    assert records[0] == records[1]
    assert records[0][-1].step == 300
    assert records[0][-1].eval_return is not None


def test_records():
    """Check the records of a training run in a bandit."""
    config = create_config(eval_period=50, eval_episodes=4)
    records = run_training("bandit:risky", config, 200)
    assert [record.step for record in records] == list(range(1, 201))
    assert records[0].loss is None
    assert records[-1].loss is not None
    assert [record.step for record in records if record.eval_return is not None] == [
        50,
        100,
        150,
        200,
    ]
    aux = records[-1].aux
    assert aux.get("pulls_arm_0", 0) + aux.get("pulls_arm_1", 0) == 200
    assert aux.get("eval_pulls_arm_0", 0) + aux.get("eval_pulls_arm_1", 0) == 4
    assert all(
        record.behavior_return in {0.0, 0.5, 1.0} for record in records
    )


def test_warmup_error():
    """Check that the training must last at least the warmup."""
    msg = "The number of steps (50) must be at least the number of warmup steps (100)."
    with pytest.raises(ValueError, match=re.escape(msg)):
        run_training("bandit:risky", create_config(), 50)


def test_environment_error():
    """Check that an invalid environment is rejected before any training."""
    with pytest.raises(ValueError, match=re.escape("The environment 'foo' is unknown")):
        Trainer("foo", create_config())


@pytest.mark.parametrize(
    ("flag", "expected"), [(True, CVaR(0.1)), (False, Identity())]
)
def test_evaluation_measure(flag, expected):
    """Check the measure of the greedy policy of the evaluations."""
    config = create_config(
        loss={"policy_measure": "cvar:0.1"}, eval_with_policy_measure=flag
    )
    trainer = Trainer("bandit:risky", config)
    assert trainer.measure == CVaR(0.1)
    assert trainer.evaluation_measure == expected


def test_checkpoint(tmp_wd):
    """Check that a checkpoint restores the online and target networks."""
    trainer = Trainer("bandit:risky", create_config(warmup_steps=10))
    trainer.run(30)
    trainer.save_checkpoint("checkpoint.npz")
    other_trainer = Trainer("bandit:risky", create_config(seed=4))
    other_trainer.load_checkpoint("checkpoint.npz")
    for name, value in trainer.state.online.parameters.items():
        assert_equal(other_trainer.state.online.parameters[name], value)
        assert_equal(other_trainer.state.target.parameters[name], value)


def test_str():
    """Check the string representation of a trainer."""
    trainer = Trainer("bandit:risky", create_config())
    text = str(trainer)
    assert text.startswith("Trainer\n")
    assert "Environment: bandit:risky" in text
    assert "Policy measure: neutral\n" in text


def test_chain():
    """Check that the greedy policy of a trained agent reaches the rewarding exit."""
    config = create_config(
        loss={"gamma": 0.9},
        discount_returns=True,
        target_sync_period=50,
        learning_rate=3e-3,
    )
    trainer = Trainer("chain:L=3", config)
    trainer.run(3000)
    evaluation = trainer.evaluate(5)
    assert evaluation.mean == pytest.approx(0.81, abs=1e-6)


def test_evaluate_min_steps():
    """Check that an evaluation plays complete episodes up to a number of steps."""
    trainer = Trainer("chain:L=3", create_config())
    evaluation = trainer.evaluate(2, min_steps=50)
    assert evaluation.n_steps >= 50
    assert len(evaluation.returns) >= 2
    assert evaluation.diagnostics["steps"] == evaluation.n_steps
    assert evaluation.diagnostics["episodes"] == len(evaluation.returns)


@pytest.mark.parametrize(
    ("n_episodes", "min_steps", "expected"), [(3, 0, 3), (2, 25, 25)]
)
def test_evaluate_bandit(n_episodes, min_steps, expected):
    """Check the numbers of single-step evaluation episodes in a bandit."""
    evaluation = Trainer("bandit:risky", create_config()).evaluate(
        n_episodes, min_steps=min_steps
    )
    assert evaluation.n_steps == expected
    assert len(evaluation.returns) == expected
    diagnostics = evaluation.diagnostics
    assert diagnostics.get("pulls_arm_0", 0) + diagnostics.get("pulls_arm_1", 0) == (
        expected
    )


@cache
def train_bandit_agent(measure: str, seed: int) -> Trainer:
    """Train an agent in the risky bandit.

    The risk-neutral agents are trained longer
    to resolve the small gap between the expected rewards of the arms.
    """
    config = create_config(
        architecture=ArchitectureSpec(
            psi_hidden=(64,), feature_dim=64, embedding_dim=64
        ),
        loss={"kappa": 0.0, "policy_measure": measure},
        learning_rate=5e-4,
        seed=seed,
    )
    trainer = Trainer("bandit:risky", config)
    trainer.run(50000 if measure == "neutral" else 10000)
    return trainer


def test_bernoulli_arm_quantiles():
    """Check that the quantile function of the Bernoulli arm is recovered."""
    taus = arange(1, 20) / 20
    expected = analytic_quantiles(KnownBandit(), 1, taus).values
    distances = []
    for seed in range(3):
        network = train_bandit_agent("neutral", seed).state.online
        quantiles = network.forward(ones((1, 1)), taus)[0, :, 1]
        distances.append(wasserstein1(quantiles, expected))

    assert mean(distances) < 0.05


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize(("measure", "expected"), [("neutral", 1), ("cvar:0.1", 0)])
def test_risky_bandit_greedy_action(measure, expected, seed):
    """Check the arm preferred by a risk-neutral or risk-averse agent."""
    trainer = train_bandit_agent(measure, seed)
    rng = default_rng(seed)
    actions = [
        act(trainer.state.online, ones(1), trainer.measure, 0.0, 4096, rng)
        for _ in range(20)
    ]
    assert actions.count(expected) >= 19


@pytest.mark.parametrize(
    ("measure", "expected"), [(Identity(), (0.5, 0.55)), (CVaR(0.1), (0.5, 0.0))]
)
def test_risky_bandit_values(measure, expected):
    """Check the distorted expectations learned in the risky bandit."""
    network = train_bandit_agent("neutral", 0).state.online
    values = network.q_beta_estimate(ones(1), measure, 100000, default_rng(5))
    assert abs(values - expected).max() < 0.05
