"""Tank battle on an 11x11 grid for N cooperating agents.

Rules
-----
- N friendly tanks start on the bottom row; enemy tanks spawn on the top
  row every ``spawn_interval`` ticks (default 20), at most ``max_enemies``
  (default 5) alive at once.  Spawn cells are drawn from the env's seeded
  generator; everything else is deterministic.
- Actions per tank per tick: 0=UP, 1=DOWN, 2=LEFT, 3=RIGHT (move one cell,
  setting the facing; blocked moves still turn), 4=FIRE (shot travels
  instantly along the facing to the first tank hit), 5=NOOP.
- Enemies chase the nearest friendly: when aligned with a clear line of
  fire they shoot, otherwise they step along the axis of larger distance.
- Team reward (single objective): +1 per enemy destroyed, -1 per friendly
  destroyed, summed per tick.  Friendly fire counts.
- Episode ends when every friendly is dead or after ``max_steps`` ticks
  (default 500).
- Fully observable: every agent sees the same length-121 vector of cell
  codes (0 empty, 1 friendly, 2 enemy).  Actions submitted for dead agents
  are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rlframe.envs.base import EnvDescriptor, Environment

SIZE = 11
UP, DOWN, LEFT, RIGHT, FIRE, NOOP = 0, 1, 2, 3, 4, 5
NUM_ACTIONS = 6

_MOVES = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0)}
_FRIENDLY_COLUMNS = (5, 2, 8, 0, 10)


@dataclass
class Tank:
    x: int
    y: int
    facing: int
    alive: bool = True

    @property
    def pos(self):
        return (self.x, self.y)


class TankBattle(Environment):
    supports_human_play = True

    def __init__(
        self,
        seed: int = 0,
        agents: int = 2,
        max_steps: int = 500,
        spawn_interval: int = 20,
        max_enemies: int = 5,
    ):
        if not 1 <= agents <= len(_FRIENDLY_COLUMNS):
            raise ValueError(f"agents must be in [1, {len(_FRIENDLY_COLUMNS)}]")
        descriptor = EnvDescriptor(
            num_agents=agents,
            num_objectives=1,
            action_space=(NUM_ACTIONS,) * agents,
            state_dim=SIZE * SIZE,
            fully_observable=True,
            deterministic=spawn_interval == 0,
        )
        super().__init__(descriptor, seed, max_steps)
        self._spawn_interval = int(spawn_interval)
        self._max_enemies = int(max_enemies)
        self._friendlies: list[Tank] = []
        self._enemies: list[Tank] = []
        self._traces: list[tuple[int, int]] = []
        self.reset()

    # --- episode ----------------------------------------------------------

    def _agent_accepts_actions(self, agent):
        return self._friendlies[agent].alive

    def _do_reset(self):
        n = self._descriptor.num_agents
        self._friendlies = [
            Tank(_FRIENDLY_COLUMNS[i], SIZE - 1, UP) for i in range(n)
        ]
        self._enemies = []
        self._traces = []

    def _do_step(self, actions):
        self._traces = []
        kills = {"enemy": 0, "friendly": 0}

        for tank, action in zip(self._friendlies, actions):
            if tank.alive:
                self._apply_action(tank, action, kills)

        for enemy in self._enemies:
            if enemy.alive:
                self._apply_action(enemy, self._enemy_action(enemy), kills)

        tick = self._steps + 1
        if (
            self._spawn_interval > 0
            and tick % self._spawn_interval == 0
            and sum(e.alive for e in self._enemies) < self._max_enemies
        ):
            self._spawn_enemy()

        if not any(t.alive for t in self._friendlies):
            self._terminal = True
        return [float(kills["enemy"] - kills["friendly"])]

    # --- mechanics ----------------------------------------------------------

    def _alive_tanks(self):
        for t in self._friendlies:
            if t.alive:
                yield t
        for t in self._enemies:
            if t.alive:
                yield t

    def _occupied(self, x, y):
        return any(t.x == x and t.y == y for t in self._alive_tanks())

    def _apply_action(self, tank: Tank, action: int, kills: dict):
        if action == NOOP:
            return
        if action == FIRE:
            self._fire(tank, kills)
            return
        dx, dy = _MOVES[action]
        tank.facing = action
        nx, ny = tank.x + dx, tank.y + dy
        if 0 <= nx < SIZE and 0 <= ny < SIZE and not self._occupied(nx, ny):
            tank.x, tank.y = nx, ny

    def _fire(self, shooter: Tank, kills: dict):
        dx, dy = _MOVES[shooter.facing]
        x, y = shooter.x + dx, shooter.y + dy
        while 0 <= x < SIZE and 0 <= y < SIZE:
            self._traces.append((x, y))
            hit = self._tank_at(x, y)
            if hit is not None:
                hit.alive = False
                kills["friendly" if hit in self._friendlies else "enemy"] += 1
                return
            x, y = x + dx, y + dy

    def _tank_at(self, x, y):
        for t in self._alive_tanks():
            if t.x == x and t.y == y:
                return t
        return None

    def _first_hit_along(self, shooter: Tank, direction: int):
        dx, dy = _MOVES[direction]
        x, y = shooter.x + dx, shooter.y + dy
        while 0 <= x < SIZE and 0 <= y < SIZE:
            hit = self._tank_at(x, y)
            if hit is not None:
                return hit
            x, y = x + dx, y + dy
        return None

    def _enemy_action(self, enemy: Tank) -> int:
        targets = [t for t in self._friendlies if t.alive]
        if not targets:
            return NOOP
        target = min(
            targets, key=lambda t: abs(t.x - enemy.x) + abs(t.y - enemy.y)
        )
        dx, dy = target.x - enemy.x, target.y - enemy.y

        if dx == 0 or dy == 0:
            if dx == 0:
                aim = DOWN if dy > 0 else UP
            else:
                aim = RIGHT if dx > 0 else LEFT
            hit = self._first_hit_along(enemy, aim)
            if hit is not None and hit in self._friendlies:
                enemy.facing = aim
                return FIRE

        if abs(dx) >= abs(dy) and dx != 0:
            first = RIGHT if dx > 0 else LEFT
            second = (DOWN if dy > 0 else UP) if dy != 0 else None
        else:
            first = DOWN if dy > 0 else UP
            second = (RIGHT if dx > 0 else LEFT) if dx != 0 else None

        for direction in (first, second):
            if direction is None:
                continue
            mx, my = _MOVES[direction]
            nx, ny = enemy.x + mx, enemy.y + my
            if 0 <= nx < SIZE and 0 <= ny < SIZE and not self._occupied(nx, ny):
                return direction
        return first

    def _spawn_enemy(self):
        free = [x for x in range(SIZE) if not self._occupied(x, 0)]
        if not free:
            return
        x = free[int(self._rng.integers(len(free)))]
        self._enemies.append(Tank(x, 0, DOWN))

    # --- observation ---------------------------------------------------------

    def _grid_codes(self) -> np.ndarray:
        grid = np.zeros(SIZE * SIZE, dtype=np.float64)
        for t in self._friendlies:
            if t.alive:
                grid[t.y * SIZE + t.x] = 1.0
        for t in self._enemies:
            if t.alive:
                grid[t.y * SIZE + t.x] = 2.0
        return grid

    def _observe(self):
        grid = self._grid_codes()
        return [grid.copy() for _ in range(self._descriptor.num_agents)]

    def render_payload(self):
        return {
            "width": SIZE,
            "height": SIZE,
            "cells": [int(c) for c in self._grid_codes()],
            "traces": [[x, y] for x, y in self._traces],
            "agents": [
                [t.x, t.y] if t.alive else None for t in self._friendlies
            ],
        }
