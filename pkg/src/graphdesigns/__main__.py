from graphdesigns.cli import main
import sys

sys.exit(main())
