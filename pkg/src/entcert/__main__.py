"""Run the command line interface with ``python -m entcert``."""

from entcert.cli.main import main

raise SystemExit(main())
