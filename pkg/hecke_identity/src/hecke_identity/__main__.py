import sys

from hecke_identity.cli import main

sys.exit(main())
