"""Trigonometric-interpolation calculus on the uniform periodic grid.

All fields live on p_k = 2*pi*k/N, k = 0..N-1, and are interpreted as
2*pi-periodic. Derivatives, antiderivatives and quadrature act along the
first axis so that both scalar fields (N,) and curve samples (N, 2) share
one code path.
"""

import numpy as np


def grid(n: int) -> np.ndarray:
    """Parameter values p_k = 2*pi*k/n."""
    return 2.0 * np.pi * np.arange(n) / n


# Coefficients below TRIM_FACTOR * eps * ||spectrum|| are FFT roundoff, not
# data; (ik)^order would amplify them by up to (N/2)^order, which alone would
# put an O(1e-10) floor under every third derivative at N = 256. The trim is
# relative to the spectrum norm, so it commutes with rescaling the data.
TRIM_FACTOR = 64.0
_EPS = float(np.finfo(float).eps)


def _trimmed_spectrum(values: np.ndarray):
    n = values.shape[0]
    spec = np.fft.rfft(values, axis=0)
    floor = TRIM_FACTOR * _EPS * np.linalg.norm(spec, axis=0, keepdims=True)
    spec[np.abs(spec) <= floor] = 0.0
    return spec


def derivative(values: np.ndarray, order: int = 1) -> np.ndarray:
    """Spectral d^order/dp^order along axis 0.

    Exact for band-limited data (coefficients at the FFT noise floor are
    trimmed first; see TRIM_FACTOR). The Nyquist mode is dropped for odd
    orders (its odd derivative is not representable on the grid).
    """
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    k = np.arange(n // 2 + 1)
    mult = (1j * k) ** order
    if order % 2 == 1 and n % 2 == 0:
        mult[-1] = 0.0
    spec = _trimmed_spectrum(values)
    shape = (len(k),) + (1,) * (values.ndim - 1)
    return np.fft.irfft(spec * mult.reshape(shape), n=n, axis=0)


def antiderivative(values: np.ndarray) -> np.ndarray:
    """Cumulative integral int_0^p f, anchored to zero at p = 0.

    The mean of f contributes the linear part mean*p; the fluctuating part
    is integrated spectrally, so the result is exact for band-limited
    integrands. Total increase over one period equals the full integral.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    spec = np.fft.rfft(values)
    mean = spec[0].real / n
    k = np.arange(n // 2 + 1)
    k[0] = 1  # avoid 0/0; mode 0 handled by the linear term
    integ = spec / (1j * k)
    integ[0] = 0.0
    if n % 2 == 0:
        integ[-1] = 0.0
    periodic = np.fft.irfft(integ, n=n)
    periodic = periodic - periodic[0]
    return periodic + mean * grid(n)


def periodic_integral(values: np.ndarray) -> float:
    """Trapezoidal quadrature (2*pi/N) * sum, spectrally accurate for smooth periodic data."""
    values = np.asarray(values, dtype=float)
    return 2.0 * np.pi * float(np.mean(values))


def dealias(values: np.ndarray) -> np.ndarray:
    """Zero the top third of spectral modes (2/3-rule projection)."""
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    spec = np.fft.rfft(values, axis=0)
    spec[n // 3:] = 0.0
    return np.fft.irfft(spec, n=n, axis=0)
