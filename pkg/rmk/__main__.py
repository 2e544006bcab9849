import sys

from rmk.main import main

sys.exit(main())
