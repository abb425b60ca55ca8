# Linear Layout Toolkit
