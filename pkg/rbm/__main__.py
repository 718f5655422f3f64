from rbm.cli.main import main

raise SystemExit(main())
