"""Modified Shepp-Logan head phantom."""

import numpy as np

# (intensity, semi-axis a, semi-axis b, center x0, center y0, rotation in degrees)
MODIFIED_SHEPP_LOGAN = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
)


def pixel_centers(rows: int, cols: int):
    """Pixel-center coordinates on [-1, 1]^2, row 0 at the top."""
    x = -1.0 + (2.0 * np.arange(cols) + 1.0) / cols
    y = 1.0 - (2.0 * np.arange(rows) + 1.0) / rows
    return np.meshgrid(x, y)


def inside_ellipse(X, Y, a, b, x0, y0, phi_deg) -> np.ndarray:
    phi = np.deg2rad(phi_deg)
    dx, dy = X - x0, Y - y0
    xr = dx * np.cos(phi) + dy * np.sin(phi)
    yr = -dx * np.sin(phi) + dy * np.cos(phi)
    return (xr / a) ** 2 + (yr / b) ** 2 <= 1.0


def shepp_logan(rows: int, cols: int) -> np.ndarray:
    """Rasterize the 10-ellipse modified Shepp-Logan phantom at pixel centers, clipped to [0, 1]."""
    if rows < 8 or cols < 8:
        raise ValueError(f"phantom needs at least 8x8 pixels, got {rows}x{cols}")
    X, Y = pixel_centers(rows, cols)
    image = np.zeros((rows, cols))
    for intensity, a, b, x0, y0, phi in MODIFIED_SHEPP_LOGAN:
        image[inside_ellipse(X, Y, a, b, x0, y0, phi)] += intensity
    return np.clip(image, 0.0, 1.0)
