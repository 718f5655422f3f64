from .generators import generate_instance
from .io import format_instance, format_schedule, parse_instance, parse_schedule, read_instance, write_instance
from .models import Instance, Schedule, ScheduleReport, Violation
from .services import (
    next_same_color,
    objective_value,
    order_interruptions,
    run_count,
    schedule_cost,
    validate_schedule,
)
