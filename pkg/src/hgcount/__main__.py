import sys

from hgcount.cli import main

sys.exit(main())
