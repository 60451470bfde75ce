"""Pure-Python versions of the integer kernels in ``_kernels.pyx``.

Both modules expose the same functions with the same semantics; the
package imports the compiled one when it is available.
"""

from __future__ import annotations


def rho_dominant(v, cartan):
    """Reflect a rho-shifted weight into the dominant chamber.

    Returns ``(sign, w)`` where ``sign`` is the determinant of the Weyl group
    element used, or ``(0, None)`` when ``v`` lies on a wall.
    """
    v = list(v)
    n = len(v)
    sign = 1
    while True:
        for i in range(n):
            c = v[i]
            if c == 0:
                return 0, None
            if c < 0:
                for k in range(n):
                    v[k] -= c * cartan[k][i]
                sign = -sign
                break
        else:
            return sign, tuple(v)


def adjoint_decomposition(mu, weights, mults, cartan):
    """Brauer-Klimyk sum: multiplicities of ``V(nu)`` in ``V(small) (x) V(mu)``.

    ``weights``/``mults`` list the weight system of the small factor.
    Returns ``{nu: multiplicity}`` with zero entries dropped.
    """
    n = len(mu)
    acc = {}
    for w, m in zip(weights, mults):
        v = [mu[k] + w[k] + 1 for k in range(n)]
        sign, dom = rho_dominant(v, cartan)
        if sign:
            nu = tuple(x - 1 for x in dom)
            acc[nu] = acc.get(nu, 0) + sign * m
    return {k: c for k, c in acc.items() if c}
