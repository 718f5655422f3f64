from __future__ import annotations

import logging
import sys

from rbm.app.config import Settings
from rbm.shared.run_context import get_run_context

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s [run=%(run_id)s inst=%(instance_digest)s stage=%(stage)s] %(message)s"


class RunContextFilter(logging.Filter):
    """Dokleja do rekordu run_id / digest instancji / etap z contextvar."""

    def filter(self, record: logging.LogRecord) -> bool:
        ctx = get_run_context()
        record.run_id = ctx.run_id or "-"
        record.instance_digest = ctx.instance_digest or "-"
        record.stage = ctx.stage or "-"
        return True


def configure_logging(settings: Settings) -> None:
    # Tylko CLI konfiguruje handlery; biblioteka loguje przez getLogger(__name__).
    root = logging.getLogger("rbm")
    for h in list(root.handlers):
        root.removeHandler(h)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(RunContextFilter())

    root.addHandler(handler)
    root.setLevel(settings.log_level)
    root.propagate = False
