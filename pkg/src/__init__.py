# Campus warehouse toolkit - source package
