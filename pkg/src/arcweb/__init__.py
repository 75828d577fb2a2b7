"""Type D arc algebras, their sign adjusted variant and combinatorial web algebras."""

__version__ = "0.1.0"
