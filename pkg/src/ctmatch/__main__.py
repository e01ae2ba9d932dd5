from ctmatch.cli import main

raise SystemExit(main())
