"""Wave kinds and theorem-case labels shared by the kernels and the classifier."""
import enum


class WaveKind(str, enum.Enum):
    NoBoundedWave = "NoBoundedWave"
    Constant = "Constant"
    SmoothPeriodic = "SmoothPeriodic"
    SmoothDecayDown = "SmoothDecayDown"
    SmoothDecayUp = "SmoothDecayUp"
    PeriodicPeakon = "PeriodicPeakon"
    PeakonDecay = "PeakonDecay"
    PeriodicCuspon = "PeriodicCuspon"
    CusponDecay = "CusponDecay"
    PeriodicAntiPeakon = "PeriodicAntiPeakon"
    AntiPeakonDecay = "AntiPeakonDecay"
    PeriodicAntiCuspon = "PeriodicAntiCuspon"
    AntiCusponDecay = "AntiCusponDecay"

    def __str__(self):
        return self.value


# index = integer kind code used by the kernels
KIND_BY_CODE = (
    WaveKind.NoBoundedWave,
    WaveKind.Constant,
    WaveKind.SmoothPeriodic,
    WaveKind.SmoothDecayDown,
    WaveKind.SmoothDecayUp,
    WaveKind.PeriodicPeakon,
    WaveKind.PeakonDecay,
    WaveKind.PeriodicCuspon,
    WaveKind.CusponDecay,
    WaveKind.PeriodicAntiPeakon,
    WaveKind.AntiPeakonDecay,
    WaveKind.PeriodicAntiCuspon,
    WaveKind.AntiCusponDecay,
)

CASE_BY_CODE = (
    "none",
    "constant",
    "Thm1(i)", "Thm1(ii)", "Thm1(iii)", "Thm1(iv)",
    "Thm2(i)", "Thm2(ii)", "Thm2(iii)", "Thm2(iv)", "Thm2(v)", "Thm2(vi)",
    "Thm2(i')", "Thm2(ii')", "Thm2(iii')", "Thm2(iv')", "Thm2(v')", "Thm2(vi')",
)

PERIODIC_KINDS = frozenset({
    WaveKind.SmoothPeriodic,
    WaveKind.PeriodicPeakon,
    WaveKind.PeriodicCuspon,
    WaveKind.PeriodicAntiPeakon,
    WaveKind.PeriodicAntiCuspon,
})
DECAY_KINDS = frozenset({
    WaveKind.SmoothDecayDown,
    WaveKind.SmoothDecayUp,
    WaveKind.PeakonDecay,
    WaveKind.CusponDecay,
    WaveKind.AntiPeakonDecay,
    WaveKind.AntiCusponDecay,
})
SMOOTH_KINDS = frozenset({
    WaveKind.SmoothPeriodic,
    WaveKind.SmoothDecayDown,
    WaveKind.SmoothDecayUp,
})
PEAKON_KINDS = frozenset({
    WaveKind.PeriodicPeakon,
    WaveKind.PeakonDecay,
    WaveKind.PeriodicAntiPeakon,
    WaveKind.AntiPeakonDecay,
})
CUSPON_KINDS = frozenset({
    WaveKind.PeriodicCuspon,
    WaveKind.CusponDecay,
    WaveKind.PeriodicAntiCuspon,
    WaveKind.AntiCusponDecay,
})
# kinds whose extremum at z = 0 is a minimum
ANTI_KINDS = frozenset({
    WaveKind.SmoothDecayUp,
    WaveKind.PeriodicAntiPeakon,
    WaveKind.AntiPeakonDecay,
    WaveKind.PeriodicAntiCuspon,
    WaveKind.AntiCusponDecay,
})
