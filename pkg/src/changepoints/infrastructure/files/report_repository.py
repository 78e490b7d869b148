from __future__ import annotations

from pathlib import Path

import pandas as pd

from changepoints.core.pipeline import DetectionReport, ReportRepository
from changepoints.core.simulation import GroundTruth

FLOAT_FORMAT = "%.17g"


class ReportRepositoryOnFiles(ReportRepository):
    def write_detection(
        self, output_dir: Path, report: DetectionReport, trace_filename: str
    ) -> None:
        output_dir.mkdir(parents=True, exist_ok=True)

        def label(t: int) -> str:
            return report.index[t - 1]

        pd.DataFrame(
            [
                {"changepoint": j, "label": label(j), "probability": p}
                for j, p in sorted(report.last_changepoint.items())
            ],
            columns=["changepoint", "label", "probability"],
        ).to_csv(output_dir / "last_changepoint.csv", index=False, float_format=FLOAT_FORMAT)

        pd.DataFrame(
            [
                {"t": t, "label": label(t), "probability": p}
                for t, p in sorted(report.marginals.changepoint_probabilities.items())
            ],
            columns=["t", "label", "probability"],
        ).to_csv(output_dir / "marginals.csv", index=False, float_format=FLOAT_FORMAT)

        segments = []
        for segment in report.segments:
            row: dict[str, object] = {
                "start": segment.start,
                "end": segment.end,
                "start_label": label(segment.start),
                "end_label": label(segment.end),
            }
            row |= {f"mu_hat{i}": x for i, x in enumerate(segment.mu_hat, start=1)}
            row |= {f"fitted{i}": x for i, x in enumerate(segment.fitted, start=1)}
            row["sigma2_mean"] = segment.sigma2_mean
            segments.append(row)
        pd.DataFrame(segments).to_csv(
            output_dir / "map_segments.csv", index=False, na_rep="", float_format=FLOAT_FORMAT
        )

        (output_dir / "evidence.txt").write_text(
            f"log_evidence = {report.log_evidence!r}\nseed = {report.seed}\n"
        )
        if report.risk is not None:
            (output_dir / "risk.txt").write_text(f"risk = {report.risk!r}\n")
        with open(output_dir / trace_filename, "w") as f:
            for line in report.trace.to_jsonl():
                f.write(line + "\n")

    def write_truth(self, path: Path, truth: GroundTruth) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(truth.model_dump_json(indent=2) + "\n")
