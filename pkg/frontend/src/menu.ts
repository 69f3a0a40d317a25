export interface MenuItem {
  label: string;
  action: () => void;
}

// One context menu at a time; opening a new one closes the last.
let openMenu: HTMLElement | null = null;

export function closeMenu(): void {
  if (openMenu) {
    openMenu.remove();
    openMenu = null;
  }
}

export function showMenu(items: MenuItem[], x: number, y: number): HTMLElement {
  closeMenu();
  const menu = document.createElement("div");
  menu.className = "context-menu";
  menu.style.left = `${x}px`;
  menu.style.top = `${y}px`;

  for (const item of items) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "menu-item";
    button.textContent = item.label;
    button.addEventListener("click", () => {
      closeMenu();
      item.action();
    });
    menu.appendChild(button);
  }

  document.body.appendChild(menu);
  openMenu = menu;
  setTimeout(() => {
    document.addEventListener("click", closeMenu, { once: true });
  }, 0);
  return menu;
}
