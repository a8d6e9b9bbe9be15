"""Post correspondence problems in groups, with an exact engine for nilpotent groups."""

__version__ = "0.1.0"
