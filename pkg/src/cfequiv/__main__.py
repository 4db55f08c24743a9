import sys

from cfequiv.cli import main

sys.exit(main())
