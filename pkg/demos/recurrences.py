"""Coefficient sequences U_h(a) and the recurrences they satisfy."""

from thuetwist.families import BernsteinHasseParams, ShanksParams, bh_build, shanks_build
from thuetwist.suites import U_window, suite_cubic, suite_quadratic

bh = bh_build(BernsteinHasseParams(1, 3, 1))
print("U_2(a), a = -3..3:", [str(v) for v in U_window(bh, 2, -3, 3).values])
rep = suite_quadratic(bh)
for r in rep.details["reports"]:
    print(r)

rep = suite_cubic(shanks_build(ShanksParams(1)))
print("cubic suite passed:", rep.passed, "checks:", rep.checked)
