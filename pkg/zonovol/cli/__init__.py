# zonovol/cli/__init__.py

from . import bench, infinite, verify, volume

COMMANDS = [volume, infinite, bench, verify]

__all__ = ["COMMANDS", "bench", "infinite", "verify", "volume"]
