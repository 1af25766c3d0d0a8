"""Twisted forms F_a for a Shanks cubic and a quartic Bernstein-Hasse family."""

from thuetwist.families import BernsteinHasseParams, ShanksParams, bh_build, bh_predict, shanks_build
from thuetwist.forms import form_at

shanks = shanks_build(ShanksParams(1))
for a in range(-2, 3):
    print(f"shanks n=1  a={a:+d}  {form_at(shanks, a)}")

p = BernsteinHasseParams(2, 2, 1)
bh = bh_build(p)
for a in range(-2, 3):
    f = form_at(bh, a)
    closed = [bh_predict(p, h, a) for h in (1, 2, 3, 4)]
    print(f"{p.descriptor}  a={a:+d}  {f}  closed forms U_1..U_4 = {closed}")
