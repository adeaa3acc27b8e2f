# This package contains tests for the fermi_rmt application.
