"""
Findings store: one .ring file and one .report file per search finding
"""

import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ringlab.config import settings
from ringlab.core import spec_tree as st
from ringlab.core.dsl import format_expr, parse_spec, print_spec
from ringlab.errors import CatalogError, RingLabError
from ringlab.models import Finding, RingReport
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


def describe(spec: st.RingSpec) -> str:
    """The expression text, with the involution when there is one"""
    label = format_expr(spec.expr)
    return label if spec.involution is None else f"{label} with involution {spec.involution.kind}"


class FindingsStore:
    """Directory of findings named ``<fingerprint hash>-<ordinal>``"""

    def __init__(self, directory: Union[str, Path, None] = None):
        self.directory = Path(directory or settings.findings_dir)

    def _next_stem(self, fphash: str) -> str:
        ordinal = 1
        while (self.directory / f"{fphash}-{ordinal}.ring").exists():
            ordinal += 1
        return f"{fphash}-{ordinal}"

    def save(self, spec: st.RingSpec, report: RingReport, predicate: str) -> Path:
        """Write the ring statement and its report; returns the .ring path"""
        self.directory.mkdir(parents=True, exist_ok=True)
        stem = self._next_stem(report.fingerprint.short_hash())
        name = "found_" + stem.replace("-", "_")
        statement = st.RingSpec(name=name, expr=spec.expr, involution=spec.involution)
        ring_path = self.directory / f"{stem}.ring"
        ring_path.write_text(f"# predicate: {predicate}\n" + print_spec(statement) + "\n")
        document = {"predicate": predicate, "spec": describe(spec), "report": report.model_dump(mode="json")}
        (self.directory / f"{stem}.report").write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
        logger.info("finding saved", path=str(ring_path), label=spec.name)
        return ring_path

    def paths(self) -> List[Path]:
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*.ring"))

    def load(self, path: Union[str, Path]) -> Tuple[st.RingSpec, Optional[str]]:
        """The stored ring statement and the predicate it was found under"""
        path = Path(path)
        try:
            text = path.read_text()
            spec = parse_spec(text)
        except (RingLabError, OSError) as e:
            raise CatalogError(str(path), e, getattr(e, "line", None))
        predicate = None
        first = text.splitlines()[0] if text else ""
        if first.startswith("# predicate:"):
            predicate = first.split(":", 1)[1].strip()
        return spec, predicate

    def findings(self) -> List[Finding]:
        """Every stored finding as recorded in its .report file"""
        result = []
        for path in self.paths():
            report_path = path.with_suffix(".report")
            if not report_path.exists():
                logger.warning("finding without report", path=str(path))
                continue
            document = json.loads(report_path.read_text())
            report = RingReport.model_validate(document["report"])
            flags = {
                name: value["holds"]
                for section in ("cleanness", "ring_class")
                for name, value in document["report"][section].items()
                if isinstance(value, dict) and "holds" in value
            }
            result.append(Finding(spec=document["spec"], fingerprint=report.fingerprint, flags=flags, path=str(path)))
        return result
