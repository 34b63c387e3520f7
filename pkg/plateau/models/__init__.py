# Pydantic models for specs and reports
