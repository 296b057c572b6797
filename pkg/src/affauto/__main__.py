import sys

from affauto.cli import main

sys.exit(main())
