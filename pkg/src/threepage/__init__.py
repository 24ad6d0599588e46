"""Three-page encoding of knots, links and spatial graphs."""

__version__ = "0.1.0"
