from oslo_verifier.cli import main

raise SystemExit(main())
