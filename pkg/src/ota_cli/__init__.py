"""Online conversion with untrusted predictions - Command Line Tool"""

__version__ = "0.1.0"
