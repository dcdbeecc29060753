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
"""The training loop of the agent.

The agent acts epsilon-greedily with respect to the distorted expectations
of its online network,
stores the transitions in a replay buffer
and updates the online network with the Adam optimizer
from uniform batches of transitions,
the Bellman targets being computed by a target network
periodically overwritten by the online one.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING

from gemseo.utils.string_tools import MultiLineString
from gemseo.utils.timer import Timer
from numpy import array
from numpy import atleast_2d
from numpy.random import SeedSequence
from numpy.random import default_rng

from gemseo_iqn.agent.agent_settings import AgentConfig
from gemseo_iqn.agent.agent_settings import Algorithm
from gemseo_iqn.agent.replay_buffer import ReplayBuffer
from gemseo_iqn.agent.transitions import Transition
from gemseo_iqn.autodiff.adam import AdamState
from gemseo_iqn.autodiff.adam import adam_step
from gemseo_iqn.autodiff.checkpoint import load_parameters
from gemseo_iqn.autodiff.checkpoint import save_parameters
from gemseo_iqn.distortion.factory import parse_measure
from gemseo_iqn.distortion.measures.identity import Identity
from gemseo_iqn.envlab.factory import EnvironmentFactory
from gemseo_iqn.losses.dqn_loss import dqn_loss
from gemseo_iqn.losses.iqn_loss import iqn_loss
from gemseo_iqn.losses.qr_loss import qr_loss
from gemseo_iqn.networks.dqn_network import DqnNetwork
from gemseo_iqn.networks.iqn_network import IqnNetwork
from gemseo_iqn.networks.qr_network import QrNetwork

if TYPE_CHECKING:
    from pathlib import Path

    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray
    from gemseo_iqn.agent.transitions import TransitionBatch
    from gemseo_iqn.distortion.measures.base_distortion_measure import (
        BaseDistortionMeasure,
    )
    from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment
    from gemseo_iqn.losses.loss_result import LossResult
    from gemseo_iqn.networks.architecture_settings import ArchitectureSpec
    from gemseo_iqn.networks.base_quantile_network import BaseQuantileNetwork

LOGGER = logging.getLogger(__name__)


def act(
    network: BaseQuantileNetwork,
    state: ArrayLike,
    measure: BaseDistortionMeasure,
    epsilon: float,
    n_samples: int,
    rng: Generator,
) -> int:
    """Select an action epsilon-greedily.

    Args:
        network: The network estimating the values of the actions.
        state: The state.
        measure: The distortion risk measure of the greedy action.
        epsilon: The probability of playing a uniformly random action.
        n_samples: The number of quantile levels
            to estimate the distorted expectations.
        rng: The random number generator.

    Returns:
        The action.

    Raises:
        ValueError: When the probability is not in $[0,1]$.
    """
    if not 0 <= epsilon <= 1:
        msg = f"The probability of a random action must be in [0,1]; got {epsilon}."
        raise ValueError(msg)

    if epsilon > 0 and rng.random() < epsilon:
        return int(rng.integers(network.spec.action_count))

    return int(network.greedy_actions(atleast_2d(state), measure, n_samples, rng)[0])


@dataclass(frozen=True)
class RandomStreams:
    """The independent random number generators of a training run."""

    initialization: Generator
    """The generator initializing the parameters of the networks."""

    acting: Generator
    """The generator of the behavior policy."""

    taus: Generator
    """The generator of the quantile levels of the losses."""

    replay: Generator
    """The generator sampling the replay buffer."""

    environment: Generator
    """The generator of the transitions of the training environment."""

    evaluation: Generator
    """The generator of the transitions of the evaluation environment."""

    evaluation_acting: Generator
    """The generator of the greedy policy of the evaluations."""

    @classmethod
    def from_seed(cls, seed: int) -> RandomStreams:
        """Spawn the generators from a seed.

        Args:
            seed: The seed.

        Returns:
            The generators.
        """
        return cls(*(default_rng(child) for child in SeedSequence(seed).spawn(7)))


@dataclass
class TrainState:
    """The state of a training run."""

    online: BaseQuantileNetwork
    """The online network."""

    target: BaseQuantileNetwork
    """The target network, a past snapshot of the online network."""

    optimizer_state: AdamState
    """The state of the Adam optimizer."""

    streams: RandomStreams
    """The random number generators."""

    env_steps: int = 0
    """The number of environment steps."""

    gradient_steps: int = 0
    """The number of gradient steps."""

    target_syncs: int = 0
    """The number of synchronizations of the target network."""


@dataclass(frozen=True)
class StepMetrics:
    """The metrics of an environment step."""

    step: int
    """The number of environment steps including this one."""

    epsilon: float
    """The probability of a random action."""

    loss: float | None = None
    """The loss of the gradient step, if any."""

    episode_return: float | None = None
    """The return of the episode ended by this step, if any."""


@dataclass(frozen=True)
class EvaluationResult:
    """The result of greedy evaluation episodes."""

    returns: RealArray
    """The returns of the episodes."""

    diagnostics: dict[str, int] = field(default_factory=dict)
    """The counters of the events of the environment during the episodes."""

    n_steps: int = 0
    """The number of environment steps of the episodes."""

    @property
    def mean(self) -> float:
        """The mean return."""
        return float(self.returns.mean())


@dataclass(frozen=True)
class TrainingRecord:
    """A record of a training run."""

    step: int
    """The number of environment steps."""

    epsilon: float
    """The probability of a random action."""

    loss: float | None
    """The last loss, if any."""

    behavior_return: float | None
    """The return of the behavior episode ended at this step, if any."""

    eval_return: float | None
    """The mean return of the evaluation made at this step, if any."""

    aux: dict[str, int] = field(default_factory=dict)
    """The counters of the events of the environments."""


class Trainer:
    """The trainer of an agent in an environment."""

    buffer: ReplayBuffer
    """The replay buffer."""

    config: AgentConfig
    """The settings of the agent."""

    environment: BaseEnvironment
    """The training environment."""

    evaluation_environment: BaseEnvironment
    """The evaluation environment."""

    evaluation_measure: BaseDistortionMeasure
    """The distortion risk measure of the greedy policy of the evaluations."""

    measure: BaseDistortionMeasure
    """The distortion risk measure of the behavior policy and of the loss."""

    state: TrainState
    """The state of the training."""

    __discount: float
    """The discount of the next reward of the running episode."""

    __episode_return: float
    """The return of the running episode."""

    __observation: RealArray
    """The current state of the training environment."""

    def __init__(self, environment: str, config: AgentConfig | None = None) -> None:
        """
        Args:
            environment: The description of the environment, e.g. `"cliff:p=0.1"`.
            config: The settings of the agent.
                If `None`, use the default ones.

        Raises:
            ValueError: When the environment cannot be created.
        """  # noqa: D205 D212 D415
        self.config = config = AgentConfig() if config is None else config
        streams = RandomStreams.from_seed(config.seed)
        factory = EnvironmentFactory()
        self.environment = factory.parse(environment, rng=streams.environment)
        self.evaluation_environment = factory.parse(environment, rng=streams.evaluation)
        spec = config.architecture.model_copy(
            update={
                "state_dim": self.environment.state_dimension,
                "action_count": self.environment.action_count,
            }
        )
        online = self.__create_network(spec, streams.initialization)
        self.state = TrainState(
            online,
            online.copy(),
            AdamState.create(
                online.parameters,
                learning_rate=config.learning_rate,
                beta_1=config.beta_1,
                beta_2=config.beta_2,
                epsilon=config.adam_epsilon,
            ),
            streams,
        )
        self.buffer = ReplayBuffer(config.buffer_capacity)
        self.measure = parse_measure(config.loss.policy_measure)
        if config.eval_with_policy_measure:
            self.evaluation_measure = self.measure
        else:
            self.evaluation_measure = Identity()

        self.__start_episode()

    def __create_network(
        self, spec: ArchitectureSpec, rng: Generator
    ) -> BaseQuantileNetwork:
        """Create the online network.

        Args:
            spec: The architecture of the network.
            rng: The random number generator initializing the parameters.

        Returns:
            The network.
        """
        if self.config.algorithm == Algorithm.QR:
            return QrNetwork(spec, n_quantiles=self.config.n_quantiles, rng=rng)

        if self.config.algorithm == Algorithm.DQN:
            return DqnNetwork(spec, rng=rng)

        return IqnNetwork(spec, rng=rng)

    def __start_episode(self) -> None:
        """Reset the training environment."""
        self.__observation = self.environment.reset()
        self.__episode_return = 0.0
        self.__discount = 1.0

    def __get_discount_factor(self) -> float:
        """Return the factor applied to the discount of the reported returns."""
        return self.config.loss.gamma if self.config.discount_returns else 1.0

    def act(self, state: ArrayLike, epsilon: float) -> int:
        """Select an action of the behavior policy.

        Args:
            state: The state.
            epsilon: The probability of playing a uniformly random action.

        Returns:
            The action.
        """
        return act(
            self.state.online,
            state,
            self.measure,
            epsilon,
            self.config.loss.k_policy,
            self.state.streams.acting,
        )

    def greedy_action(self, state: ArrayLike) -> int:
        """Select an action of the greedy policy of the evaluations.

        Args:
            state: The state.

        Returns:
            The action.
        """
        return act(
            self.state.online,
            state,
            self.evaluation_measure,
            0.0,
            self.config.loss.k_policy,
            self.state.streams.evaluation_acting,
        )

    def compute_loss(self, batch: TransitionBatch) -> LossResult:
        """Compute the loss of the online network.

        Args:
            batch: The batch of transitions.

        Returns:
            The loss and its gradients.
        """
        state = self.state
        algorithm = self.config.algorithm
        if algorithm == Algorithm.DQN:
            return dqn_loss(state.online, state.target, batch, self.config.loss)

        if algorithm == Algorithm.QR:
            loss = qr_loss
        else:
            loss = iqn_loss

        return loss(
            state.online, state.target, batch, self.config.loss, state.streams.taus
        )

    def __update(self) -> float:
        """Make a gradient step from a uniform batch of transitions.

        Returns:
            The loss.
        """
        state = self.state
        batch = self.buffer.sample(self.config.batch_size, state.streams.replay)
        result = self.compute_loss(batch)
        parameters, state.optimizer_state = adam_step(
            state.online.parameters, result.gradients, state.optimizer_state
        )
        state.online.set_parameters(parameters)
        state.gradient_steps += 1
        if state.gradient_steps % self.config.target_sync_period == 0:
            state.target = state.online.copy()
            state.target_syncs += 1
            LOGGER.debug(
                "Synchronize the target network at gradient step %s.",
                state.gradient_steps,
            )

        return result.value

    def train_iteration(self) -> StepMetrics:
        """Play one step of the behavior policy and learn from the replay buffer.

        A gradient step is made every `train_period` environment steps
        once the replay buffer contains `warmup_steps` transitions.

        Returns:
            The metrics of the step.
        """
        config = self.config
        state = self.state
        epsilon = config.get_epsilon(state.env_steps)
        action = self.act(self.__observation, epsilon)
        result = self.environment.step(action)
        self.buffer.add(
            Transition(
                self.__observation,
                action,
                result.reward,
                result.next_state,
                result.terminal,
            )
        )
        self.__episode_return += self.__discount * result.reward
        self.__discount *= self.__get_discount_factor()
        state.env_steps += 1
        episode_return = None
        if result.done:
            episode_return = self.__episode_return
            self.__start_episode()
        else:
            self.__observation = result.next_state

        loss = None
        if (
            len(self.buffer) >= config.warmup_steps
            and state.env_steps % config.train_period == 0
        ):
            loss = self.__update()

        return StepMetrics(state.env_steps, epsilon, loss, episode_return)

    def evaluate(
        self, n_episodes: int | None = None, min_steps: int = 0
    ) -> EvaluationResult:
        """Play episodes with the greedy policy in the evaluation environment.

        Episodes are played until both numbers are reached;
        the last episode is always completed.

        Args:
            n_episodes: The minimum number of episodes.
                If `None`, use `eval_episodes`.
            min_steps: The minimum number of environment steps.

        Returns:
            The returns of the episodes, the events of the environment
            and the number of steps.
        """
        n_episodes = n_episodes or self.config.eval_episodes
        environment = self.evaluation_environment
        gamma = self.__get_discount_factor()
        diagnostics = Counter(environment.diagnostics)
        returns = []
        n_steps = 0
        while len(returns) < n_episodes or n_steps < min_steps:
            observation = environment.reset()
            episode_return = 0.0
            discount = 1.0
            done = False
            while not done:
                result = environment.step(self.greedy_action(observation))
                n_steps += 1
                episode_return += discount * result.reward
                discount *= gamma
                observation = result.next_state
                done = result.done

            returns.append(episode_return)

        return EvaluationResult(
            array(returns), dict(environment.diagnostics - diagnostics), n_steps
        )

    def run(self, total_steps: int) -> list[TrainingRecord]:
        """Train the agent.

        The greedy policy is evaluated every `eval_period` steps
        and after the last step.

        Args:
            total_steps: The number of environment steps.

        Returns:
            The records of the steps ending a behavior episode or an evaluation.

        Raises:
            ValueError: When the number of steps is lower than the warmup.
        """
        config = self.config
        if total_steps < config.warmup_steps:
            msg = (
                f"The number of steps ({total_steps}) must be at least "
                f"the number of warmup steps ({config.warmup_steps})."
            )
            raise ValueError(msg)

        LOGGER.info("%s", self)
        records = []
        loss = None
        with Timer() as timer:
            for index in range(total_steps):
                metrics = self.train_iteration()
                if metrics.loss is not None:
                    loss = metrics.loss

                eval_return = None
                aux = dict(self.environment.diagnostics)
                if metrics.step % config.eval_period == 0 or index == total_steps - 1:
                    evaluation = self.evaluate()
                    eval_return = evaluation.mean
                    aux.update({
                        f"eval_{name}": count
                        for name, count in evaluation.diagnostics.items()
                    })
                    LOGGER.info(
                        "Step %s: mean evaluation return %s (epsilon: %.3f).",
                        metrics.step,
                        eval_return,
                        metrics.epsilon,
                    )

                if metrics.episode_return is not None or eval_return is not None:
                    records.append(
                        TrainingRecord(
                            metrics.step,
                            metrics.epsilon,
                            loss,
                            metrics.episode_return,
                            eval_return,
                            aux,
                        )
                    )

        LOGGER.info(
            "%s steps and %s gradient steps in %.2f s.",
            total_steps,
            self.state.gradient_steps,
            timer.elapsed_time,
        )
        return records

    def save_checkpoint(self, file_path: str | Path) -> None:
        """Save the parameters of the online network.

        Args:
            file_path: The path to the checkpoint.
        """
        save_parameters(file_path, self.state.online.parameters)

    def load_checkpoint(self, file_path: str | Path) -> None:
        """Load the parameters of the online and target networks.

        Args:
            file_path: The path to the checkpoint.
        """
        self.state.online.set_parameters(load_parameters(file_path))
        self.state.target = self.state.online.copy()

    def __str__(self) -> str:
        text = MultiLineString()
        text.add("Trainer")
        text.indent()
        text.add("Environment: {}", self.environment)
        text.add("Algorithm: {}", self.config.algorithm)
        text.add("Policy measure: {}", self.measure)
        text.add("Evaluation measure: {}", self.evaluation_measure)
        text.add(
            "Network: {} with {} parameters",
            self.state.online.__class__.__name__,
            self.state.online.parameter_count,
        )
        text.add("Seed: {}", self.config.seed)
        return str(text)


def run_training(
    environment: str, config: AgentConfig, total_steps: int
) -> list[TrainingRecord]:
    """Train an agent in an environment.

    Args:
        environment: The description of the environment, e.g. `"cliff:p=0.1"`.
        config: The settings of the agent.
        total_steps: The number of environment steps.

    Returns:
        The records of the steps ending a behavior episode or an evaluation.

    Raises:
        ValueError: When the environment cannot be created
            or when the number of steps is lower than the warmup.
    """
    return Trainer(environment, config).run(total_steps)
