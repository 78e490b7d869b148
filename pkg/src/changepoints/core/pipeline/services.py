from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any, NamedTuple

from ..emission import EmissionServices
from ..filtering import FilterConfig, FilterServices
from ..length_prior import LengthPrior
from ..oracle import OracleServices
from ..posterior import PosteriorServices
from ..shared import ConfigError
from ..simulation import GroundTruth, SimulationServices
from .domain import DetectionReport, ExactReport, SegmentationMass, Series
from .repository import ReportRepository, RunConfigRepository, SeriesRepository
from .schemas import DetectionConfigurations, RunConfig

logger = logging.getLogger(__name__)


class Engines(NamedTuple):
    prior: LengthPrior
    emission: EmissionServices
    filter: FilterServices
    posterior: PosteriorServices


class DetectionServices:
    def __init__(
        self,
        config_repository: RunConfigRepository,
        series_repository: SeriesRepository,
        report_repository: ReportRepository,
        config: DetectionConfigurations,
    ):
        self.config_repository = config_repository
        self.series_repository = series_repository
        self.report_repository = report_repository
        self.config = config

    def engines(self, run: RunConfig, filter_config: FilterConfig | None = None) -> Engines:
        prior = run.prior.build(horizon=self.config.PRIOR_HORIZON)
        emission = EmissionServices(run.model)
        return Engines(
            prior=prior,
            emission=emission,
            filter=FilterServices(prior, emission, filter_config or run.filter),
            posterior=PosteriorServices(prior, emission),
        )

    def _check_dimension(self, run: RunConfig, series: Series) -> None:
        if series.d != run.model.d:
            raise ConfigError(
                "model.d", f"is {run.model.d} but the series has {series.d} columns"
            )

    # -- detect -------------------------------------------------------------

    def detect(self, run: RunConfig, series: Series) -> DetectionReport:
        """Filter the series, then run every backward pass."""
        self._check_dimension(run, series)
        engines = self.engines(run)
        masks = series.masks
        state, trace = engines.filter.run(series.values, masks)
        segmentation = engines.posterior.map_segmentation(trace)
        risk = (
            engines.posterior.last_segment_risk(state, run.risk)
            if run.risk is not None
            else None
        )
        return DetectionReport(
            seed=run.seed,
            index=series.index,
            log_evidence=state.log_evidence,
            last_changepoint=engines.filter.last_changepoint_distribution(state),
            marginals=engines.posterior.marginal_changepoint_probabilities(trace),
            segmentation=segmentation,
            segments=tuple(
                engines.posterior.segment_summaries(segmentation, series.values, masks)
            ),
            trace=trace,
            risk=risk,
        )

    def detect_file(
        self,
        run: RunConfig,
        output_dir: Path,
        input_path: Path,
    ) -> DetectionReport:
        logger.info("Reading series from %s", input_path)
        series = self.series_repository.read(input_path)
        report = self.detect(run, series)
        self.report_repository.write_detection(
            output_dir, report, self.config.TRACE_FILENAME
        )
        logger.info(
            "Wrote reports for %s to %s (%d changepoints in the MAP segmentation)",
            input_path,
            output_dir,
            len(report.segmentation.changepoints) - 1,
        )
        return report

    def detect_files(
        self,
        config_path: Path,
        input_paths: list[Path],
        output_dir: Path,
        overrides: dict[str, Any] | None = None,
    ) -> list[DetectionReport]:
        """One series writes into ``output_dir``; several write into ``output_dir/<stem>``."""
        run = self.config_repository.load(config_path, overrides)
        if len(input_paths) == 1:
            return [self.detect_file(run, output_dir, input_paths[0])]
        targets = [output_dir / path.stem for path in input_paths]
        if self.config.WORKERS <= 1:
            return [
                self.detect_file(run, target, path)
                for target, path in zip(targets, input_paths)
            ]
        with ProcessPoolExecutor(max_workers=self.config.WORKERS) as executor:
            return list(
                executor.map(partial(self.detect_file, run), targets, input_paths)
            )

    # -- risk -----------------------------------------------------------------

    def risk(self, run: RunConfig, series: Series) -> float:
        """Last-segment risk only, skipping the backward passes."""
        if run.risk is None:
            raise ConfigError("risk", "risk.v and risk.theta are required")
        self._check_dimension(run, series)
        engines = self.engines(run)
        state, _ = engines.filter.run(series.values, series.masks)
        return engines.posterior.last_segment_risk(state, run.risk)

    def risk_file(
        self, config_path: Path, input_path: Path, overrides: dict[str, Any] | None = None
    ) -> float:
        run = self.config_repository.load(config_path, overrides)
        return self.risk(run, self.series_repository.read(input_path))

    # -- exact ------------------------------------------------------------------

    def exact(self, run: RunConfig, series: Series, compare: bool = False) -> ExactReport:
        self._check_dimension(run, series)
        engines = self.engines(run)
        oracle = OracleServices(engines.prior, engines.emission)
        masks = series.masks
        exact = oracle.enumerate_posterior(series.values, masks)
        marginals = exact.marginals()
        last = exact.last_changepoint()
        risk = oracle.risk(exact, run.risk) if run.risk is not None else None
        deviations = None
        if compare:
            streaming = self.engines(run, FilterConfig.exact())
            state, trace = streaming.filter.run(series.values, masks)
            filtered_last = streaming.filter.last_changepoint_distribution(state)
            filtered_marginals = streaming.posterior.marginal_changepoint_probabilities(
                trace
            ).changepoint_probabilities
            deviations = {
                "log_evidence": abs(state.log_evidence - exact.log_evidence),
                "last_changepoint": max(
                    abs(filtered_last.get(j, 0.0) - p) for j, p in last.items()
                ),
                "marginals": max(
                    (abs(filtered_marginals[t] - p) for t, p in marginals.items()),
                    default=0.0,
                ),
            }
            if run.risk is not None and risk is not None:
                deviations["risk"] = abs(
                    streaming.posterior.last_segment_risk(state, run.risk) - risk
                )
            logger.info("Largest deviation from the filter: %.3g", max(deviations.values()))
        return ExactReport(
            n=exact.n,
            log_evidence=exact.log_evidence,
            marginals=marginals,
            last_changepoint=last,
            segmentations=tuple(
                SegmentationMass(
                    changepoints=exact.changepoints(index),
                    prior=exact.prior_probability(exact.changepoints(index)),
                    posterior=exact.probability(exact.changepoints(index)),
                )
                for index in range(exact.size)
            ),
            joint_map=exact.joint_map(),
            greedy_map=oracle.greedy_map(series.values, masks),
            risk=risk,
            deviations=deviations,
        )

    def exact_file(
        self,
        config_path: Path,
        input_path: Path,
        compare: bool = False,
        overrides: dict[str, Any] | None = None,
    ) -> ExactReport:
        run = self.config_repository.load(config_path, overrides)
        return self.exact(run, self.series_repository.read(input_path), compare)

    # -- simulate -----------------------------------------------------------------

    def simulate(self, run: RunConfig, n: int) -> tuple[Series, GroundTruth]:
        prior = run.prior.build(horizon=self.config.PRIOR_HORIZON)
        values, truth = SimulationServices(prior, run.model, run.simulate).simulate(
            n, run.seed
        )
        return Series.numbered(values), truth

    def simulate_file(
        self,
        config_path: Path,
        n: int,
        output_path: Path,
        overrides: dict[str, Any] | None = None,
    ) -> GroundTruth:
        """Write the series to ``output_path`` and ``truth.json`` beside it."""
        run = self.config_repository.load(config_path, overrides)
        series, truth = self.simulate(run, n)
        self.series_repository.write(output_path, series)
        self.report_repository.write_truth(output_path.parent / "truth.json", truth)
        logger.info("Wrote simulated series to %s", output_path)
        return truth
