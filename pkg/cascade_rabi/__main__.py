from cascade_rabi.cli import main

main(prog_name="cascade-rabi")
