"""Non-squeezing certificates and suspension arithmetic."""
import json
from dataclasses import asdict, dataclass, field

from .errors import BadParams
from .front import front_hash, require_valid
from .fp import is_prime
from .rulings import count_circular_rulings, count_disk_rulings

TOOL_VERSION = "0.1.0"
CERT_SCHEMA = "cylruling-certificate/1"
CONCLUSION = "Λ admits no Legendrian isotopy into Ẑ(1)"


@dataclass(frozen=True)
class Certificate:
    front_hash: str
    disk_count: int
    circular_count: int
    inequality_violated: bool
    conclusion: str
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.inequality_violated != (self.disk_count > self.circular_count):
            raise BadParams("violation flag disagrees with the counts")

    def to_dict(self):
        return {"schema": CERT_SCHEMA, **asdict(self)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def nonsqueeze_certificate(front, fuzz_seeds=()):
    require_valid(front)
    disk = count_disk_rulings(front)
    circ = count_circular_rulings(front)
    violated = disk > circ
    return Certificate(
        front_hash=front_hash(front),
        disk_count=disk,
        circular_count=circ,
        inequality_violated=violated,
        conclusion=CONCLUSION if violated else "",
        provenance={"tool": "cylruling", "version": TOOL_VERSION, "fuzz_seeds": list(fuzz_seeds)},
    )


@dataclass(frozen=True)
class SuspensionSpec:
    seed_disk_count: int
    seed_circular_count: int
    local_system_count: int
    q: int = 2

    def __post_init__(self):
        for name in ("seed_disk_count", "seed_circular_count", "local_system_count"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise BadParams(f"{name} must be a nonnegative integer", value=v)
        if not is_prime(self.q):
            raise BadParams("q must be prime", q=self.q)


def torus_local_systems(m, q):
    """Rank-one local systems on T^m over F_q."""
    if m < 0 or not is_prime(q):
        raise BadParams("need m >= 0 and q prime", m=m, q=q)
    return (q - 1) ** m


def suspension_counts(s):
    disk = s.seed_disk_count * s.local_system_count
    circ = 0 if s.seed_circular_count == 0 else s.seed_circular_count * s.local_system_count
    return disk, circ, disk > circ
