for (int i = 0; i < list.size(); i++) {
  Item item = list.get(i);
  System.out.println(item.getName());
}
