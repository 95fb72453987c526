"""Complete two-isogeny descent for twin-prime curve pairs over the nine
imaginary quadratic fields of class number one."""

from .qfield import (
    ALL_FIELDS,
    QFieldError,
    QInt,
    QuadField,
    build_place_set,
    classify_prime,
    kronecker,
    quad_field,
    split_gaussian_prime,
    twin_primes_below,
)
from .localfield import (
    HenselCertificate,
    LocalElem,
    QuarticModel,
    SearchPolicy,
    Verdict,
    embed,
    hensel_lift,
    is_square,
    quartic_locally_solvable,
)

__version__ = "1.0.0"
