"""Experiment result storage on DuckDB."""

import json
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence

import duckdb

from consensusmine.experiments.config import ExperimentConfig
from consensusmine.models.stable_id import canonical_json, generate_result_id

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

TRIAL_FIELDS = [
    "result_id",
    "experiment_id",
    "trial_id",
    "sweep_index",
    "sweep_value",
    "strategy",
    "m",
    "interval_lo",
    "interval_hi",
    "empirical_score",
    "phi_hat",
    "phi_opt",
    "success",
    "total_queries",
    "mean_queries_per_voter",
    "max_queries_per_voter",
]

SUMMARY_FIELDS = [
    "experiment_id",
    "sweep_index",
    "sweep_param",
    "value",
    "trials",
    "success_fraction",
    "mean_phi_gap",
    "mean_queries_per_voter",
    "mean_total_queries",
]


class ExperimentStore:
    """
    Persistent store for experiment configs, per-trial results and sweep summaries.

    Rows are keyed by deterministic IDs: an experiment by its config hash
    and a trial result by (config hash, trial_id, sweep_index). Recording
    the same run again replaces rows instead of adding new ones.
    """

    def __init__(self, db_path: str = ":memory:"):
        """
        Initialize DuckDB connection and create schema.

        Args:
            db_path: Path to the DuckDB database file (":memory:" for a scratch store)
        """
        self.db_path = db_path
        self.conn = duckdb.connect(db_path)
        self._create_schema()
        logger.info(f"ExperimentStore initialized at {db_path}")

    def _create_schema(self):
        """Create tables and indices."""
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS experiments (
                experiment_id VARCHAR PRIMARY KEY,
                preset VARCHAR,
                config_json VARCHAR NOT NULL,
                config_hash VARCHAR NOT NULL,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """)

        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS trial_results (
                result_id VARCHAR PRIMARY KEY,
                experiment_id VARCHAR NOT NULL,
                trial_id INTEGER NOT NULL,
                sweep_index INTEGER NOT NULL,
                sweep_value DOUBLE NOT NULL,
                strategy VARCHAR NOT NULL,
                m BIGINT NOT NULL,
                interval_lo DOUBLE NOT NULL,
                interval_hi DOUBLE NOT NULL,
                empirical_score DOUBLE NOT NULL,
                phi_hat DOUBLE NOT NULL,
                phi_opt DOUBLE NOT NULL,
                success BOOLEAN NOT NULL,
                total_queries BIGINT NOT NULL,
                mean_queries_per_voter DOUBLE NOT NULL,
                max_queries_per_voter BIGINT NOT NULL
            )
        """)

        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS sweep_summary (
                experiment_id VARCHAR NOT NULL,
                sweep_index INTEGER NOT NULL,
                sweep_param VARCHAR NOT NULL,
                value DOUBLE NOT NULL,
                trials INTEGER NOT NULL,
                success_fraction DOUBLE NOT NULL,
                mean_phi_gap DOUBLE NOT NULL,
                mean_queries_per_voter DOUBLE NOT NULL,
                mean_total_queries DOUBLE NOT NULL,
                PRIMARY KEY (experiment_id, sweep_index)
            )
        """)

        indices = [
            "CREATE INDEX IF NOT EXISTS idx_trials_experiment ON trial_results(experiment_id)",
            "CREATE INDEX IF NOT EXISTS idx_trials_sweep ON trial_results(experiment_id, sweep_index)",
        ]
        for idx_sql in indices:
            self.conn.execute(idx_sql)

        self.conn.commit()

    # ============================================================================
    # Write operations
    # ============================================================================

    def record_experiment(self, config: ExperimentConfig) -> str:
        """
        Insert or update an experiment row.

        Args:
            config: Experiment configuration

        Returns:
            experiment_id (the config hash)
        """
        experiment_id = config.config_hash
        config_json = canonical_json(config.to_dict())
        existing = self.conn.execute(
            "SELECT experiment_id FROM experiments WHERE experiment_id = ?", [experiment_id]
        ).fetchone()

        if existing:
            self.conn.execute("""
                UPDATE experiments
                SET preset = ?, config_json = ?
                WHERE experiment_id = ?
            """, [config.preset, config_json, experiment_id])
            logger.info(f"Updated experiment {experiment_id[:12]}")
        else:
            self.conn.execute("""
                INSERT INTO experiments (experiment_id, preset, config_json, config_hash, created_at)
                VALUES (?, ?, ?, ?, ?)
            """, [experiment_id, config.preset, config_json, experiment_id, datetime.utcnow()])
            logger.info(f"Recorded experiment {experiment_id[:12]} ({config.preset or 'custom'})")

        self.conn.commit()
        return experiment_id

    def record_trials(self, experiment_id: str, config: ExperimentConfig, results: Sequence[Any]) -> int:
        """
        Upsert per-trial results.

        Args:
            experiment_id: ID returned by record_experiment
            config: Configuration the results came from
            results: TrialResult objects

        Returns:
            Number of rows written
        """
        config_hash = config.config_hash
        rows = []
        for r in results:
            rows.append([
                generate_result_id(config_hash, r.trial_id, r.sweep_index),
                experiment_id,
                r.trial_id,
                r.sweep_index,
                float(r.sweep_value),
                r.strategy,
                r.m,
                r.interval.lo,
                r.interval.hi,
                float(r.interval.empirical_score),
                r.phi_hat,
                r.phi_opt,
                bool(r.success),
                r.queries["total"],
                r.queries["mean_per_voter"],
                r.queries["max_per_voter"],
            ])

        if rows:
            placeholders = ", ".join("?" for _ in TRIAL_FIELDS)
            self.conn.executemany(
                f"INSERT OR REPLACE INTO trial_results ({', '.join(TRIAL_FIELDS)}) VALUES ({placeholders})",
                rows,
            )
            self.conn.commit()
        logger.info(f"Stored {len(rows)} trial results for experiment {experiment_id[:12]}")
        return len(rows)

    def record_summary(self, experiment_id: str, summary_rows: Sequence[Any]) -> int:
        """Upsert sweep summary rows (SweepRow objects)."""
        rows = [
            [experiment_id] + [getattr(row, name) for name in SUMMARY_FIELDS[1:]]
            for row in summary_rows
        ]
        if rows:
            placeholders = ", ".join("?" for _ in SUMMARY_FIELDS)
            self.conn.executemany(
                f"INSERT OR REPLACE INTO sweep_summary ({', '.join(SUMMARY_FIELDS)}) VALUES ({placeholders})",
                rows,
            )
            self.conn.commit()
        return len(rows)

    # ============================================================================
    # Read operations
    # ============================================================================

    def list_experiments(self, preset: Optional[str] = None) -> List[Dict[str, Any]]:
        """
        List recorded experiments, optionally filtered by preset.

        Returns:
            Dicts with experiment_id, preset, config and created_at
        """
        query = "SELECT experiment_id, preset, config_json, created_at FROM experiments"
        params: List[Any] = []
        if preset:
            query += " WHERE preset = ?"
            params.append(preset)
        query += " ORDER BY created_at, experiment_id"

        return [
            {
                "experiment_id": row[0],
                "preset": row[1],
                "config": json.loads(row[2]),
                "created_at": row[3],
            }
            for row in self.conn.execute(query, params).fetchall()
        ]

    def load_config(self, experiment_id: str) -> Optional[ExperimentConfig]:
        """Rebuild the ExperimentConfig of a recorded experiment."""
        row = self.conn.execute(
            "SELECT config_json FROM experiments WHERE experiment_id = ?", [experiment_id]
        ).fetchone()
        if not row:
            return None
        return ExperimentConfig.from_dict(json.loads(row[0]))

    def load_trials(self, experiment_id: str) -> List[Dict[str, Any]]:
        """Trial rows of one experiment ordered by (sweep_index, trial_id)."""
        rows = self.conn.execute(f"""
            SELECT {', '.join(TRIAL_FIELDS)}
            FROM trial_results
            WHERE experiment_id = ?
            ORDER BY sweep_index, trial_id
        """, [experiment_id]).fetchall()
        return [dict(zip(TRIAL_FIELDS, row)) for row in rows]

    def load_summary(self, experiment_id: str) -> List[Dict[str, Any]]:
        """Summary rows of one experiment in sweep order."""
        rows = self.conn.execute(f"""
            SELECT {', '.join(SUMMARY_FIELDS)}
            FROM sweep_summary
            WHERE experiment_id = ?
            ORDER BY sweep_index
        """, [experiment_id]).fetchall()
        return [dict(zip(SUMMARY_FIELDS, row)) for row in rows]

    def count_trials(self, experiment_id: Optional[str] = None) -> int:
        """Count stored trial results, optionally for one experiment."""
        if experiment_id:
            result = self.conn.execute(
                "SELECT COUNT(*) FROM trial_results WHERE experiment_id = ?", [experiment_id]
            ).fetchone()
        else:
            result = self.conn.execute("SELECT COUNT(*) FROM trial_results").fetchone()
        return result[0] if result else 0

    # ============================================================================
    # Utility methods
    # ============================================================================

    def close(self):
        """Close the database connection."""
        self.conn.close()
        logger.info("ExperimentStore connection closed")

    def __del__(self):
        """Cleanup: close connection."""
        try:
            self.close()
        except Exception:
            pass
