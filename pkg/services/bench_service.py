# bounded_treemaps/services/bench_service.py
"""
การทดลองแบบสุ่มหลายรอบ: อัตราส่วนสูงสุด ความถี่ของแต่ละกรณี และชนิดรูปของใบ
(เช่น รูปตัว S เกิดขึ้นน้อยแค่ไหน)
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from models.errors import BadSpec
from services.generator_service import TreeSpec, generate_random_tree
from services.layout_service import check_algorithm, compute_layout
from services.verification_service import verify

logger = logging.getLogger(__name__)

SINGLE_MAX_CHILDREN = 16
TREE_MAX_LEAVES = 100


@dataclass
class TrialResult:
    trial: int
    seed: int
    leaves: int
    depth: int
    max_asp_ortho: float
    max_asp_convex: float
    max_leaf_asp: float
    passed: bool
    cases: dict = field(default_factory=dict)
    shapes: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "trial": self.trial,
            "seed": self.seed,
            "leaves": self.leaves,
            "depth": self.depth,
            "max_asp_ortho": self.max_asp_ortho,
            "max_asp_convex": self.max_asp_convex,
            "max_leaf_asp": self.max_leaf_asp,
            "pass": self.passed,
            "cases": dict(self.cases),
            "shapes": dict(self.shapes),
        }


@dataclass
class BenchReport:
    algorithm: str
    seed: int
    trials: list

    def _totals(self, attr):
        totals = {}
        for trial in self.trials:
            for key, count in getattr(trial, attr).items():
                totals[key] = totals.get(key, 0) + count
        return dict(sorted(totals.items()))

    @property
    def passed(self):
        return all(t.passed for t in self.trials)

    def summary(self):
        shapes = self._totals("shapes")
        leaves = sum(shapes.values())
        asps = [t.max_asp_ortho for t in self.trials]
        return {
            "trials": len(self.trials),
            "failures": sum(1 for t in self.trials if not t.passed),
            "max_asp_ortho": max(asps, default=0.0),
            "mean_max_asp_ortho": math.fsum(asps) / len(asps) if asps else 0.0,
            "max_asp_convex": max((t.max_asp_convex for t in self.trials), default=0.0),
            "max_leaf_asp": max((t.max_leaf_asp for t in self.trials), default=0.0),
            "case_totals": self._totals("cases"),
            "shape_totals": shapes,
            "s_shape_fraction": shapes.get("sShape", 0) / leaves if leaves else 0.0,
        }

    def to_dict(self):
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "pass": self.passed,
            "summary": self.summary(),
            "trials": [t.to_dict() for t in self.trials],
        }


class BenchService:
    """
    คลาสสำหรับรันการทดลองซ้ำด้วยต้นไม้สุ่ม

    seed ของแต่ละรอบมาจาก numpy SeedSequence(seed).spawn(trials)
    จึงไม่ขึ้นกับลำดับการรันหรือจำนวน worker
    """

    def __init__(self, workers=1):
        self.workers = max(1, int(workers))

    @staticmethod
    def trial_seeds(seed, trials):
        children = np.random.SeedSequence(seed).spawn(trials)
        return [int(child.generate_state(1)[0]) for child in children]

    @staticmethod
    def trial_spec(algorithm, trial_seed, spec=None):
        """
        ข้อกำหนดของต้นไม้ในรอบหนึ่ง: ใช้ spec ที่ให้มาถ้ามี
        ไม่เช่นนั้นสุ่มจำนวนใบจาก seed ของรอบ (single ใช้ต้นไม้ลึก 1)
        """
        if spec is not None:
            parsed = TreeSpec.parse(spec)
            if algorithm == "single" and parsed.max_depth > 1:
                raise BadSpec("การจัดวางระดับเดียวต้องใช้ maxDepth ≤ 1", max_depth=parsed.max_depth)
            return parsed
        rng = np.random.default_rng(trial_seed)
        if algorithm == "single":
            leaves = int(rng.integers(2, SINGLE_MAX_CHILDREN + 1))
            return TreeSpec(max_depth=1, max_children=leaves, leaf_count=leaves)
        distribution = "oneHuge" if rng.random() < 0.25 else "loguniform"
        return TreeSpec(max_depth=6, max_children=6,
                        leaf_count=int(rng.integers(2, TREE_MAX_LEAVES + 1)),
                        weight_distribution=distribution)

    def run_trial(self, algorithm, index, trial_seed, spec=None) -> TrialResult:
        tree = generate_random_tree(trial_seed, self.trial_spec(algorithm, trial_seed, spec))
        layout = compute_layout(tree, algorithm)
        report = verify(tree, layout)
        if not report.passed:
            logger.warning("bench trial %d (seed %d) failed verification: %s", index, trial_seed,
                           report.failures()[:3])
        return TrialResult(
            trial=index,
            seed=trial_seed,
            leaves=len(tree.leaves()),
            depth=tree.depth(),
            max_asp_ortho=layout.max_aspect("ortho"),
            max_asp_convex=layout.max_aspect("convex"),
            max_leaf_asp=layout.max_aspect("ortho", leaves_only=True),
            passed=report.passed,
            cases=dict(layout.stats.get("cases", {})),
            shapes=layout.shape_counts(),
        )

    def run_bench(self, algorithm, trials, seed, spec=None) -> BenchReport:
        """
        รันการทดลอง trials รอบ

        Args:
            algorithm (str): convex, ortho หรือ single
            trials (int): จำนวนรอบ
            seed (int): seed หลัก
            spec (dict | None): ข้อกำหนดต้นไม้ที่ใช้ทุกรอบ

        Returns:
            BenchReport: ผลเรียงตามหมายเลขรอบเสมอ
        """
        check_algorithm(algorithm)
        if trials < 0:
            raise BadSpec("จำนวนรอบต้องไม่ติดลบ", trials=trials)
        seeds = self.trial_seeds(seed, trials)
        jobs = list(enumerate(seeds))
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(lambda job: self.run_trial(algorithm, *job, spec), jobs))
        else:
            results = [self.run_trial(algorithm, i, s, spec) for i, s in jobs]
        report = BenchReport(algorithm, seed, results)
        summary = report.summary()
        logger.info("bench %s: %d trials, max asp %.4f, %d failures", algorithm, trials,
                    summary["max_asp_ortho"], summary["failures"])
        return report


# ---- convenience functions ----

def run_bench(algorithm, trials, seed, spec=None, workers=1):
    return BenchService(workers).run_bench(algorithm, trials, seed, spec)
