from pathlib import Path

RESOURCES_DIR = Path("resources")
PROBLEMS_DIR = RESOURCES_DIR / "problems"
REPORTS_DIR = Path("reports")
