"""Counter-based random streams.

Every random draw in the library flows through a Philox generator keyed
by ``(seed, domain, trial)``, so sampling is reproducible, independent of
evaluation order, and safe to parallelize across trials. Entry (j, k) of a
sampled matrix consumes the (j*n + k)-th variate of its stream.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_MASK56 = (1 << 56) - 1

# stream domains (kept distinct so reusing one seed across purposes is safe)
DOMAIN_SAMPLE = 1      # scheme sampling, one stream per (seed, trial)
DOMAIN_MATRIX = 2      # corpus matrix generation
DOMAIN_VECTORS = 3     # random test vectors (Khintchine checks)


def philox(seed: int, domain: int, trial: int = 0) -> np.random.Generator:
    """Deterministic generator for one (seed, domain, trial) cell."""
    key = np.array(
        [seed & _MASK64, ((domain & 0xFF) << 56) | (trial & _MASK56)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def draw_os_seed() -> int:
    """Fresh 63-bit seed from the OS entropy pool."""
    return int.from_bytes(np.random.SeedSequence().entropy.to_bytes(16, "little")[:8],
                          "little") >> 1
