import sys

from pfsc.cli import main

sys.exit(main())
