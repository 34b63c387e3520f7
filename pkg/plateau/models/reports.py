"""
Pydantic report models shared by the CLI (``--json``) and the HTTP service.

Each model has a ``from_*`` constructor taking the matching engine object,
so serialization lives in one place.
"""

from pydantic import BaseModel, Field

from plateau.engine.classifier import PlateauedReport
from plateau.engine.code_builder import LinearCode, WeightDistribution, enumerator_string, min_max_weights
from plateau.engine.cyclotomic import CycInt
from plateau.engine.minimality import MinimalityVerdict
from plateau.engine.pipeline import Analysis, Verification
from plateau.engine.theory import DistributionDiff, PredictedDistribution
from plateau.engine.walsh import WalshSpectrum, moment
from plateau.models.spec import FunctionSpecModel


class CycIntModel(BaseModel):
    p: int
    coeffs: list[int] = Field(..., description="Coordinates on ξ^0 .. ξ^{p-2}.")

    @classmethod
    def from_value(cls, value: CycInt) -> "CycIntModel":
        return cls(p=value.p, coeffs=list(value.coeffs))


class SpectrumEntry(BaseModel):
    b: int = Field(..., description="Element index of b (0 is zero, k+1 is ζ^k).")
    value: CycIntModel


class WalshSummary(BaseModel):
    support_size: int
    magnitude_squared: int = Field(..., description="The common nonzero |W_f(b)|^2.")
    moments: dict[str, int] = Field(default_factory=dict, description="S_0, S_1, S_2.")
    spectrum: list[SpectrumEntry] | None = None

    @classmethod
    def from_spectrum(cls, s: WalshSpectrum, include_values: bool = False) -> "WalshSummary":
        magnitudes = [mag for mag in s.squared_magnitudes if mag]
        entries = None
        if include_values:
            entries = [
                SpectrumEntry(b=b, value=CycIntModel.from_value(v)) for b, v in enumerate(s.values)
            ]
        return cls(
            support_size=len(s.support),
            magnitude_squared=magnitudes[0] if magnitudes else 0,
            moments={f"S{i}": moment(s, i) for i in range(3)},
            spectrum=entries,
        )


class PlateauedReportModel(BaseModel):
    r: int
    regularity: str
    epsilon: int | None = None
    u: str | None = Field(default=None, description="Unit in the tabulated convention.")
    u_exact: str | None = None
    is_bent: bool = False
    g_balanced: bool
    ng_counts: list[int]
    support_size: int
    table_sign: int | None = None
    dual_sign_expected: int | None = None
    dual_sign_measured: int | None = None
    sign_discrepancy: bool = False
    summary: str

    @classmethod
    def from_report(cls, report: PlateauedReport) -> "PlateauedReportModel":
        return cls(
            r=report.r,
            regularity=report.regularity.value,
            epsilon=report.epsilon,
            u=report.unit.value if report.unit else None,
            u_exact=report.unit_exact.value if report.unit_exact else None,
            is_bent=report.is_bent,
            g_balanced=report.g_balanced,
            ng_counts=list(report.ng_counts),
            support_size=report.support_size,
            table_sign=report.table_sign,
            dual_sign_expected=report.dual_sign_expected,
            dual_sign_measured=report.dual_sign_measured,
            sign_discrepancy=report.sign_discrepancy,
            summary=report.summary(),
        )


class AnalysisReport(BaseModel):
    spec: FunctionSpecModel
    function: str = Field(..., description="Rendered Tr(Ψ).")
    walsh: WalshSummary | None = None
    plateau: PlateauedReportModel | None = None
    error: str | None = Field(default=None, description="Set when the function is not plateaued.")

    @classmethod
    def from_analysis(cls, analysis: Analysis, include_spectrum: bool = False) -> "AnalysisReport":
        return cls(
            spec=FunctionSpecModel.from_spec(analysis.spec),
            function=analysis.spec.describe(),
            walsh=WalshSummary.from_spectrum(analysis.spectrum, include_spectrum),
            plateau=PlateauedReportModel.from_report(analysis.report),
        )


class WeightRow(BaseModel):
    w: int
    A: int


def _rows(rows: tuple[tuple[int, int], ...]) -> list[WeightRow]:
    return [WeightRow(w=w, A=a) for w, a in rows]


class CodeReport(BaseModel):
    parameters: str = Field(..., description="[n,k] or [n,k]_p.")
    p: int
    n: int
    k: int
    expected_k: int
    degenerate: bool
    weights: list[WeightRow]
    w_min: int | None = None
    w_max: int | None = None
    enumerator: str

    @classmethod
    def from_code(cls, code: LinearCode, wd: WeightDistribution) -> "CodeReport":
        nonzero = any(w > 0 for w, _ in wd.rows)
        w_min, w_max = min_max_weights(wd) if nonzero else (None, None)
        return cls(
            parameters=code.parameters,
            p=code.p,
            n=code.n,
            k=code.k,
            expected_k=code.expected_k,
            degenerate=code.degenerate,
            weights=_rows(wd.rows),
            w_min=w_min,
            w_max=w_max,
            enumerator=enumerator_string(wd),
        )


class PredictedDistributionModel(BaseModel):
    p: int
    m: int
    r: int
    epsilon: int | None = None
    g_balanced: bool | None = None
    case: str
    provenance: str
    table_sign: int | None = None
    dual_sign: int | None = None
    rows: list[WeightRow]
    total: int

    @classmethod
    def from_prediction(cls, pd: PredictedDistribution) -> "PredictedDistributionModel":
        return cls(
            p=pd.p,
            m=pd.m,
            r=pd.r,
            epsilon=pd.epsilon,
            g_balanced=pd.g_balanced,
            case=pd.case.value,
            provenance=pd.provenance,
            table_sign=pd.table_sign,
            dual_sign=pd.dual_sign,
            rows=_rows(pd.rows),
            total=pd.total,
        )


class DistributionDiffModel(BaseModel):
    matches: bool
    missing: list[WeightRow] = []
    extra: list[WeightRow] = []
    mismatched: list[dict[str, int]] = []

    @classmethod
    def from_diff(cls, diff: DistributionDiff) -> "DistributionDiffModel":
        return cls(
            matches=diff.matches,
            missing=_rows(diff.missing),
            extra=_rows(diff.extra),
            mismatched=[{"w": w, "predicted": a, "actual": b} for w, a, b in diff.mismatched],
        )


class MinimalityReport(BaseModel):
    all_minimal: bool
    representatives: int
    witness: list[list[int]] | None = Field(
        default=None, description="(α, β index) of a codeword and of one it covers."
    )

    @classmethod
    def from_verdict(cls, verdict: MinimalityVerdict) -> "MinimalityReport":
        return cls(
            all_minimal=verdict.all_minimal,
            representatives=verdict.representatives,
            witness=[list(label) for label in verdict.witness] if verdict.witness else None,
        )


class CheckResult(BaseModel):
    name: str
    status: str
    detail: str = ""


class VerifyReport(BaseModel):
    spec: FunctionSpecModel
    passed: bool
    plateau: PlateauedReportModel
    code: CodeReport
    predicted: PredictedDistributionModel | None = None
    diff: DistributionDiffModel | None = None
    minimality: MinimalityReport | None = None
    checks: list[CheckResult]

    @classmethod
    def from_verification(cls, result: Verification) -> "VerifyReport":
        return cls(
            spec=FunctionSpecModel.from_spec(result.analysis.spec),
            passed=result.passed,
            plateau=PlateauedReportModel.from_report(result.analysis.report),
            code=CodeReport.from_code(result.code, result.distribution),
            predicted=PredictedDistributionModel.from_prediction(result.predicted) if result.predicted else None,
            diff=DistributionDiffModel.from_diff(result.diff) if result.diff else None,
            minimality=MinimalityReport.from_verdict(result.minimality) if result.minimality else None,
            checks=[CheckResult(name=c.name, status=c.status.value, detail=c.detail) for c in result.checks],
        )


class SearchHitModel(BaseModel):
    spec: FunctionSpecModel
    function: str
    report: PlateauedReportModel


class BudgetSettings(BaseModel):
    enumeration: int
    minimality: int
    search: int
    max_field_size: int
    threads: int


class HealthReport(BaseModel):
    status: str = "healthy"
    version: str
    environment: str
    uptime_seconds: float
    budgets: BudgetSettings
    cache: dict[str, int] = Field(default_factory=dict)
