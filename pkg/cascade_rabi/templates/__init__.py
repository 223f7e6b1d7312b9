from .plot_script import plot_script_template, render_plot_script
