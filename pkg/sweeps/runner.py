import concurrent.futures
import dataclasses
import itertools
import logging
from typing import List

import numpy as np
from pydantic import ValidationError

import config as settings
from lib.errors import SimulationException
from lib.validation import parse_validation_error
from sweeps.errors import PointFailed
from sweeps.pipeline import PointResult, evaluate_point
from sweeps.spec import PointSpec, SweepSpec

__all__ = ("SweepRow", "SweepResult", "run_sweep", "point_seed", "grid_points")

log = logging.getLogger(__name__)


@dataclasses.dataclass
class SweepRow:
    index: int
    assignments: dict
    result: PointResult


@dataclasses.dataclass
class SweepResult:
    spec: SweepSpec
    rows: List[SweepRow]

    @property
    def parameter_columns(self):
        return [p.name for p in self.spec.sweep]

    @property
    def observable_columns(self):
        return [o.column for o in self.spec.parsed_observables]

    @property
    def columns(self):
        return (
            self.parameter_columns
            + self.observable_columns
            + ["commutator_residual", "commutator_normalized", "cond_ubb", "error"]
        )

    @property
    def failed(self) -> List[SweepRow]:
        return [row for row in self.rows if row.result.error]

    def records(self) -> List[dict]:
        out = []
        for row in self.rows:
            record = dict(row.assignments)
            for column in self.observable_columns:
                record[column] = row.result.values.get(column)
            record.update(
                commutator_residual=row.result.commutator_residual,
                commutator_normalized=row.result.commutator_normalized,
                cond_ubb=row.result.cond_ubb,
                error=row.result.error,
            )
            out.append(record)
        return out


def point_seed(master_seed: int, index: int) -> int:
    """Monte-Carlo seed of grid point *index*, independent of worker count and completion order."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1)[0])


def grid_points(spec: SweepSpec):
    """Parameter assignments in grid order; the last swept parameter varies fastest."""
    names = [p.name for p in spec.sweep]
    for values in itertools.product(*(p.values() for p in spec.sweep)):
        yield dict(zip(names, (float(v) for v in values)))


def _evaluate_row(task) -> SweepRow:
    index, base, assignments, seed = task
    try:
        point = base.with_assignments(assignments)
        result = evaluate_point(point, seed)
    except ValidationError as e:
        result = PointResult(values={}, error=str(PointFailed(assignments, ValueError(parse_validation_error(e)))))
    except SimulationException as e:
        log.warning(f"sweep point {index} failed: {e}")
        result = PointResult(values={}, error=str(PointFailed(assignments, e)))
    return SweepRow(index, assignments, result)


def run_sweep(spec: SweepSpec, workers: int = None) -> SweepResult:
    """
    Evaluates every grid point of *spec*. Failed points keep their row with the message in ``error``; rows are
    returned in grid order whatever the number of workers.
    """
    if workers is None:
        workers = settings.SWEEP_WORKERS
    base = spec.base_point()
    tasks = [
        (index, base, assignments, point_seed(spec.seed, index))
        for index, assignments in enumerate(grid_points(spec))
    ]
    log.info(f"sweep {spec.name!r}: {len(tasks)} points on {workers} worker(s)")

    if workers <= 1:
        rows = [_evaluate_row(task) for task in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, tasks))

    result = SweepResult(spec, rows)
    log.info(f"sweep {spec.name!r} done: {len(rows) - len(result.failed)} ok, {len(result.failed)} failed")
    return result
