"""mem-report command."""

from typing import List, Literal, Optional, Tuple

from pydantic import Field

from hashembed.cli.commands import add_command
from hashembed.cli.run_config import IntList, RunConfig, build
from hashembed.codes.accounting import compression_sweep, memory_report, to_mib, truncate_ratio
from hashembed.core.models import DecoderVariant, MemoryReport, MemorySpec

COLUMNS = ("model", "codes", "decoder", "cpu", "gpu", "total", "gpu_ratio", "total_ratio")


class MemReportRun(RunConfig):
    """Settings of ``mem-report``."""

    n: int = Field(ge=1)
    d_e: int = Field(default=64, ge=1)
    f: Literal[16, 32, 64] = 32
    c: int = Field(default=256, ge=2)
    m: int = Field(default=16, ge=1)
    d_c: int = Field(default=512, ge=1)
    d_m: int = Field(default=512, ge=1)
    l: int = Field(default=3, ge=2)
    variant: Literal["light", "full", "both"] = "both"
    include_biases: bool = False
    gnn_params: int = Field(default=0, ge=0)
    sweep: Optional[IntList] = None

    def spec(self, variant: DecoderVariant) -> MemorySpec:
        return build(
            MemorySpec,
            n=self.n,
            d_e=self.d_e,
            f=self.f,
            c=self.c,
            m=self.m,
            d_c=self.d_c,
            d_m=self.d_m,
            l=self.l,
            variant=variant,
            include_biases=self.include_biases,
            gnn_params=self.gnn_params,
        )

    def variants(self) -> List[DecoderVariant]:
        if self.variant == "both":
            return [DecoderVariant.LIGHT, DecoderVariant.FULL]
        return [DecoderVariant(self.variant)]


def _row(name: str, sizes: Tuple[float, ...], ratios: Tuple[float, float]) -> str:
    cells = [f"{name:<8}"]
    cells += [f"{to_mib(size):>10.2f}" for size in sizes]
    cells += [f"{truncate_ratio(ratio):>12.2f}" for ratio in ratios]
    return "".join(cells)


def format_table(reports: List[Tuple[DecoderVariant, MemoryReport]]) -> List[str]:
    """
    Memory table in MiB: a raw row followed by one row per decoder variant.

    Ratios are raw (plus GNN) over the GPU-resident and the total size.
    """
    header = f"{COLUMNS[0]:<8}" + "".join(f"{c:>10}" for c in COLUMNS[1:6])
    header += "".join(f"{c:>12}" for c in COLUMNS[6:])
    first = reports[0][1]
    raw_total = first.raw_embedding_bytes + first.gnn_bytes
    lines = [header, _row("raw", (0.0, 0.0, 0.0, raw_total, raw_total), (1.0, 1.0))]
    for variant, report in reports:
        lines.append(
            _row(
                variant.value,
                (
                    report.code_bytes,
                    report.decoder_bytes,
                    report.cpu_bytes,
                    report.gpu_bytes,
                    report.cpu_bytes + report.gpu_bytes,
                ),
                (report.gpu_ratio, report.total_ratio),
            )
        )
    return lines


def run_mem_report(cfg: MemReportRun) -> None:
    reports = [(variant, memory_report(cfg.spec(variant))) for variant in cfg.variants()]
    first = reports[0][1]
    print(f"raw_mib: {to_mib(first.raw_embedding_bytes):.2f}")
    print(f"codes_mib: {to_mib(first.code_bytes):.2f}")
    for line in format_table(reports):
        print(line)

    if cfg.sweep:
        for variant, _ in reports:
            print(f"\nentities  total_ratio ({variant.value})")
            for row in compression_sweep(cfg.spec(variant), cfg.sweep):
                print(f"{row['n']:>8}  {row['total_ratio']:>11.2f}")


def register(subparsers) -> None:
    parser = add_command(
        subparsers,
        "mem-report",
        "memory cost of raw embeddings against codes plus decoder",
        MemReportRun,
        run_mem_report,
    )
    parser.add_argument("--n", type=int, help="number of entities")
    parser.add_argument("--d-e", type=int, help="embedding width")
    parser.add_argument("--f", type=int, choices=(16, 32, 64), help="float width in bits")
    parser.add_argument("--c", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--d-c", type=int)
    parser.add_argument("--d-m", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--variant", choices=("light", "full", "both"))
    parser.add_argument("--include-biases", action="store_true")
    parser.add_argument("--gnn-params", type=int, help="GNN scalars counted on both sides")
    parser.add_argument("--sweep", help="comma-separated entity counts")
