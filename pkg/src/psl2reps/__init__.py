"""Components of PSL(2,R) representation spaces of punctured surface groups."""

__version__ = "0.1.0"
