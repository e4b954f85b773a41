"""A short walk through the package: actions, the classification systems, a probe."""

from wvir import ModuleParams, act, build_w1_base_system, build_wm1_system, format_poly, solve_system
from wvir.algebra import ONE, T
from wvir.classify import example_rows, format_solution, row_space_equal
from wvir.verify import Window, check_module_axiom, simplicity_probe

for eps in (1, -1):
    p = ModuleParams.symbolic(eps)
    print(f"eps={eps:+d}  L[1,2] . 1 =", format_poly(act(p, 1, 2, ONE)))
    print(f"eps={eps:+d}  L[-1,1] . t =", format_poly(act(p, -1, 1, T)))
    print("  axioms on a small grid:", check_module_axiom(eps, Window(2, 2, 3)).summary())

# degree-4 ansatz for L[1,1] . 1 in W(1): only a0 = alpha, a1 survive
print()
print(format_solution(solve_system(build_w1_base_system(4))), end="")

# the N = 3 system in W(-1) against the published rows
sysm = build_wm1_system(3)
print()
print("N=3 rows agree with the reference:", row_space_equal(sysm.rows, example_rows(3)))
print(format_solution(solve_system(sysm)), end="")

for alpha in (1, 0):
    res = simplicity_probe(-1, 1, alpha, 1, T)
    print(f"\nprobe at alpha={alpha}: {res.status.value}")
