import sys

from app.main import cli_main

sys.exit(cli_main())
