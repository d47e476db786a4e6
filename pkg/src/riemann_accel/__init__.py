"""Accelerated optimization on constant-curvature model spaces.

Subpackages cover the geometric primitives (`manifolds`), the curvature
constants and schedules (`constants`), test objectives (`objectives`), the
discrete methods (`optimizers`), fine-step continuous references and monitors
(`continuous`), the gradient-descent shadowing diagnostics (`shadowing`),
numeric checks of the underlying geometric inequalities (`geometry_checks`)
and the experiment CLI (`cli`).
"""

__version__ = "0.1.0"
