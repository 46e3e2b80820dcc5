from splitting_structures.definitions import defs

__all__ = ["defs"]
