"""Kernel backend selection.

The compiled backend (``grossum._kernels_cy``) is preferred when it
imported cleanly; otherwise the pure-Python twin takes over.  Setting
the environment variable ``GROSSUM_PURE`` to a nonempty value forces
the pure backend, which is how the backend-parity tests and benchmarks
pin one side or the other.
"""

import os

from . import _kernels_py

if os.environ.get("GROSSUM_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

pow10 = _impl.pow10
digits10 = _impl.digits10
tdiv = _impl.tdiv
round_div = _impl.round_div
round_shift = _impl.round_shift
normalize = _impl.normalize
cmp_mp = _impl.cmp_mp
add_mp = _impl.add_mp
sub_mp = _impl.sub_mp
mul_mp = _impl.mul_mp
div_mp = _impl.div_mp
sqrt_mp = _impl.sqrt_mp
to_int_nearest = _impl.to_int_nearest
exp_mp = _impl.exp_mp
ln_mp = _impl.ln_mp
pi_mp = _impl.pi_mp
atan_mp = _impl.atan_mp
sin_mp = _impl.sin_mp
cos_mp = _impl.cos_mp
inth_root = _impl.inth_root
sieve_primes = _impl.sieve_primes
