"""Query accounting: the ledger and the memoizing approval oracle."""

from dataclasses import dataclass
from typing import Dict, Any, Optional, Set, Tuple

import numpy as np

from consensusmine.errors import InvariantViolation


@dataclass(frozen=True, eq=False)
class QueryLedger:
    """
    Per-voter count of (voter, point) approval queries actually issued.

    Attributes:
        per_voter_queries: int64 array of length n
    """

    per_voter_queries: np.ndarray

    def __post_init__(self):
        counts = np.array(self.per_voter_queries, dtype=np.int64)
        if counts.ndim != 1 or np.any(counts < 0):
            raise InvariantViolation("Query counts must be a 1-D array of non-negative integers")
        counts.setflags(write=False)
        object.__setattr__(self, "per_voter_queries", counts)

    @classmethod
    def uniform(cls, n: int, per_voter: int) -> "QueryLedger":
        """Ledger where every voter answered the same number of queries."""
        return cls(per_voter_queries=np.full(n, per_voter, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.per_voter_queries.size)

    @property
    def total_queries(self) -> int:
        return int(self.per_voter_queries.sum())

    @property
    def mean_per_voter(self) -> float:
        return self.total_queries / self.n if self.n else 0.0

    @property
    def max_per_voter(self) -> int:
        return int(self.per_voter_queries.max()) if self.n else 0

    def merge(self, other: "QueryLedger") -> "QueryLedger":
        """Sum two ledgers over the same voters."""
        if other.n != self.n:
            raise InvariantViolation(f"Cannot merge ledgers over {self.n} and {other.n} voters")
        return QueryLedger(per_voter_queries=self.per_voter_queries + other.per_voter_queries)

    def summary(self) -> Dict[str, Any]:
        """Ledger summary JSON: total, mean_per_voter, max_per_voter."""
        return {
            "total": self.total_queries,
            "mean_per_voter": self.mean_per_voter,
            "max_per_voter": self.max_per_voter,
        }

    def __repr__(self) -> str:
        return f"QueryLedger(total={self.total_queries}, mean_per_voter={self.mean_per_voter:.2f})"


class ApprovalOracle:
    """
    Answers "does voter v approve sample i?" and counts each pair once.

    Repeated questions are served from memory and never billed twice.
    With track_pairs=True every billed pair is also recorded, and billing
    a pair twice raises InvariantViolation.
    """

    def __init__(self, lo: np.ndarray, hi: np.ndarray, xs: np.ndarray, track_pairs: bool = False):
        """
        Initialize the oracle.

        Args:
            lo: Voter left endpoints
            hi: Voter right endpoints
            xs: Sorted sample positions
            track_pairs: Record billed pairs for double-count detection
        """
        self.lo = lo
        self.hi = hi
        self.xs = xs
        self.counts = np.zeros(lo.size, dtype=np.int64)
        self._answers: Dict[Tuple[int, int], bool] = {}
        self._billed: Optional[Set[Tuple[int, int]]] = set() if track_pairs else None

    def ask(self, voter: int, index: int) -> bool:
        """Approval of sample index by voter (memoized)."""
        key = (voter, index)
        cached = self._answers.get(key)
        if cached is not None:
            return cached

        if self._billed is not None:
            if key in self._billed:
                raise InvariantViolation(f"Query {key} billed twice")
            self._billed.add(key)

        answer = bool(self.lo[voter] <= self.xs[index] <= self.hi[voter])
        self._answers[key] = answer
        self.counts[voter] += 1
        return answer

    def asked(self, voter: int, index: int) -> bool:
        """Whether the pair has already been queried."""
        return (voter, index) in self._answers

    @property
    def billed_pairs(self) -> Optional[Set[Tuple[int, int]]]:
        return self._billed

    def ledger(self) -> QueryLedger:
        return QueryLedger(per_voter_queries=self.counts.copy())
