for (int i = 0; i < list.size() && i < MAX_ITEMS; i++) {
  final Item item = list.get(i);
  logger.debug("item {}", item.getName());
}
