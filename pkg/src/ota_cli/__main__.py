"""Allow running with python -m ota_cli"""

from ota_cli.cli import main

if __name__ == "__main__":
    main()
