"""Independent reference implementations used to cross-check the library.

These deliberately avoid the code paths they validate: the differential
below works on components with left partial derivatives directly, rather
than going through anchor callbacks and section evaluation.
"""

from gradedgeom.calculus import SKEW, Form, canonical_tuples
from gradedgeom.gralg import GFunction


def d_components_tangent(omega: Form) -> Form:
    """Coordinate differential for the unshifted tangent algebroid.

    (d w)_{A_1..A_{p+1}} = sum_r (-1)^{r+1 + (|z^{A_r}|+1)|w|
                                  + |z^{A_r}|(|z^{A_1}|+..+|z^{A_{r-1}}|)}
                           d_{A_r} w_{..no A_r..}
    with |Phi_A| = -|z^A| plugged into the frame-level formula; the
    bracket terms vanish because coordinate derivations commute.
    """
    frame = omega.frame
    chart = omega.chart
    p = omega.arity
    comps = {}
    for tup in canonical_tuples(frame, p + 1, SKEW):
        zdegs = [-frame.degrees[t] for t in tup]
        val = GFunction.zero(chart, omega.degree + sum(frame.degrees[t] for t in tup))
        for r in range(1, p + 2):
            rest = tup[: r - 1] + tup[r:]
            comp = omega.comps.get(rest)
            if comp is None:
                continue
            name = frame.labels[tup[r - 1]]
            exp = (r + 1) + (zdegs[r - 1] + 1) * omega.degree
            exp += zdegs[r - 1] * sum(zdegs[: r - 1])
            val = val + comp.partial(name).scale(-1 if exp % 2 else 1)
        comps[tup] = val
    return Form(chart, frame, p + 1, omega.degree, SKEW, comps)
