"""Monitor: clones a learner into worker threads, aggregates their reports,
and writes checkpoints.

Workers share a step-ticket budget (epochs * steps_per_epoch environment
steps) and optionally an episode cap; each worker owns a private cloned
environment and posts one record per completed episode to the report
queue.  A worker exception stops the run and surfaces as TrainingAborted
carrying the partial report.
"""

from __future__ import annotations

import logging
import os
import queue
import threading
import time

from rlframe.errors import TrainingAborted
from rlframe.learn.base import Tickets
from rlframe.learn.types import EpisodeRecord, EvaluationReport, MonitorSpec, TrainingReport
from rlframe.seeding import derive_seed

logger = logging.getLogger("rlframe.monitor")

_EVAL_STREAM = 987_654_321  # fixed ordinal so repeated evaluations match


class Monitor:
    def __init__(self, spec: MonitorSpec, learner):
        self.spec = spec
        self.learner = learner

    # --- training -------------------------------------------------------------

    def train(self) -> TrainingReport:
        learner = self.learner
        learner.training_interval = self.spec.training_interval
        tickets = Tickets(self.spec.step_budget)
        stop = threading.Event()
        records: queue.Queue = queue.Queue()
        errors: list[BaseException] = []
        episode_counter = {"n": 0}
        counter_lock = threading.Lock()
        report = TrainingReport()
        started = time.perf_counter()

        def worker_done_budget() -> bool:
            if self.spec.max_episodes is None:
                return False
            with counter_lock:
                return episode_counter["n"] >= self.spec.max_episodes

        def worker(thread_id: int):
            bound = learner.clone_for_thread(thread_id)
            env = learner.env.clone()
            bound.training_interval = self.spec.training_interval
            try:
                while not stop.is_set() and not worker_done_budget():
                    if tickets.taken >= self.spec.step_budget:
                        break
                    result = bound.run_episode(env, "train", tickets)
                    if not result.complete:
                        break
                    with counter_lock:
                        episode_counter["n"] += 1
                        index = episode_counter["n"]
                    loss = (
                        sum(result.losses) / len(result.losses)
                        if result.losses
                        else None
                    )
                    records.put(
                        EpisodeRecord(
                            thread_id, index, result.steps,
                            result.returns.tolist(), loss,
                        )
                    )
                    if index % self.spec.report_frequency == 0:
                        logger.info(
                            "episode %d thread %d steps %d return %s loss %s",
                            index, thread_id, result.steps,
                            result.returns.tolist(), loss,
                        )
            except BaseException as exc:  # surfaced as TrainingAborted
                errors.append(exc)
                stop.set()

        threads = [
            threading.Thread(target=worker, args=(tid,), daemon=True)
            for tid in range(learner.spec.threads)
        ]
        for t in threads:
            t.start()

        self._checkpoint_while_running(threads, tickets, report)

        for t in threads:
            t.join()

        while not records.empty():
            record = records.get()
            report.episodes.append(record)
            report.thread_episode_counts[record.thread_id] = (
                report.thread_episode_counts.get(record.thread_id, 0) + 1
            )
        report.episodes.sort(key=lambda r: r.episode)
        report.total_steps = tickets.taken
        if learner.network is not None:
            report.train_calls = learner.network.step_counter
        report.wall_seconds = time.perf_counter() - started

        self._save_checkpoint(report, "final")

        if errors:
            raise TrainingAborted(
                f"learner thread died: {errors[0]!r}", report
            ) from errors[0]
        return report

    def _checkpoint_while_running(self, threads, tickets, report):
        interval = self.spec.checkpoint_interval
        can_checkpoint = (
            self.learner.network is not None
            and self.spec.checkpoint_dir
            and interval > 0
            and self.spec.steps_per_epoch > 0
        )
        next_epoch = interval
        while any(t.is_alive() for t in threads):
            if can_checkpoint:
                epoch = tickets.taken // self.spec.steps_per_epoch
                if epoch >= next_epoch:
                    self._save_checkpoint(report, f"epoch{epoch}")
                    next_epoch = epoch + interval
            time.sleep(0.01)

    def _save_checkpoint(self, report, tag: str):
        if self.learner.network is None or not self.spec.checkpoint_dir:
            return
        os.makedirs(self.spec.checkpoint_dir, exist_ok=True)
        path = os.path.join(self.spec.checkpoint_dir, f"{tag}.ckpt")
        self.learner.network.save_model(path)
        report.checkpoints.append(path)

    # --- evaluation --------------------------------------------------------------

    def evaluate(self, episodes: int | None = None, checkpoint=None) -> EvaluationReport:
        """Greedy episodes with no parameter updates."""
        if checkpoint is not None:
            if self.learner.network is None:
                raise TrainingAborted("checkpoint given but learner has no network")
            self.learner.network.load_model(checkpoint)
        count = episodes if episodes is not None else self.spec.eval_episodes
        env = self.learner.env.clone()
        env.reseed(derive_seed(self.learner.env.seed, _EVAL_STREAM))
        returns, steps = [], []
        for _ in range(count):
            result = self.learner.run_episode(env, "eval")
            returns.append(result.returns.tolist())
            steps.append(result.steps)
        return EvaluationReport(returns, steps)
