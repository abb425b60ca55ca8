# Pydantic models/schemas
